#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "kirwan/blowup.hpp"
#include "kirwan/torus.hpp"

using namespace kirwan;
using namespace kirwan::test;

namespace {

const Names XY{"x", "y"};
const SubtorusBasis FULL = SubtorusBasis::full(1);

const Chart& by_name(const std::vector<Chart>& charts, const std::string& name) {
    for (const Chart& c : charts)
        if (c.name == name)
            return c;
    throw std::logic_error("no chart " + name);
}

Ideal chart_ideal(const Chart& c, std::initializer_list<const char*> gens) {
    return ideal(c.cdga.ring_names(), gens);
}

} // namespace

TEST_CASE("lambda_matrix", "[blowup]")
{
    auto lex = MonomialOrder::lex(2);
    LambdaMatrix lam = lambda_matrix({poly(XY, "x*y^2"), poly(XY, "x^2*y")}, {poly(XY, "x"), poly(XY, "y")}, lex);
    CHECK(lam.entries[0][0] == poly(XY, "y^2"));
    CHECK(lam.entries[0][1].is_zero());
    CHECK(lam.entries[1][0] == poly(XY, "x*y"));
    CHECK(lam.entries[1][1].is_zero());

    LambdaMatrix one = lambda_matrix({poly(XY, "x")}, {poly(XY, "x")}, lex);
    CHECK(one.entries[0][0] == poly(XY, "1"));

    try {
        lambda_matrix({poly(XY, "x + 1")}, {poly(XY, "x"), poly(XY, "y")}, lex);
        FAIL("expected NotInIdeal");
    } catch (const NotInIdeal& e) {
        CHECK(e.row() == 0);
    }
}

TEST_CASE("dagger_check", "[blowup]")
{
    CHECK(dagger_check(darboux_x2y2(), FULL));
    CHECK(dagger_check(xy2_x2y(), FULL));

    GradedCdga bad(1, {var0("x", {1}), var0("z", {0})});
    Names xz{"x", "z"};
    bad.gens1.push_back({{"w1", 1, {0}}, Polynomial(2)});
    bad.gens2.push_back({{"y2", 2, {0}}, {{"w1", poly(xz, "1")}}});
    CHECK(dagger_check(bad, FULL)); // y2 has weight zero: not moving
    bad.gens2.back().var.weight = Weight{1};
    bad.gens2.back().differential.at("w1") = poly(xz, "x");
    CHECK(dagger_check(bad, FULL));
    bad.gens1.push_back({{"w2", 1, {1}}, Polynomial(2)});
    bad.gens2.push_back({{"y3", 2, {1}}, {{"w2", poly(xz, "z")}}});
    CHECK_FALSE(dagger_check(bad, FULL));
    CHECK_THROWS_AS(blowup_charts(bad, FULL), DaggerViolation);
    CHECK_THROWS_AS(rees_presentation(bad, FULL, MonomialOrder::lex(2)), DaggerViolation);
}

TEST_CASE("Rees presentation of the x^2y, xy^2 center", "[blowup]")
{
    GradedCdga x = xy2_x2y();
    ReesPresentation r = rees_presentation(x, FULL, MonomialOrder::lex(2));
    const Names& n = r.names;
    REQUIRE(n.size() == 7);
    CHECK(n[2] == "t_inv");
    CHECK(n[3] == "v_x");
    CHECK(n[4] == "v_y");
    CHECK(r.homogeneous_degree[2] == -1);

    std::vector<Polynomial> deg0, lam;
    for (const ReesRelation& rel : r.relations) {
        if (rel.homological_degree == 0 && rel.homogeneous_degree == 0)
            deg0.push_back(rel.relation);
        if (rel.homological_degree == 0 && rel.homogeneous_degree == 1)
            lam.push_back(rel.relation);
    }
    REQUIRE(deg0.size() == 2);
    CHECK(deg0[0] == poly(n, "t_inv*v_x - x"));
    CHECK(deg0[1] == poly(n, "t_inv*v_y - y"));
    REQUIRE(lam.size() == 2);
    // lex division by (x, y) puts both quotients on x
    CHECK(lam[0] == poly(n, "x*y*v_x"));
    CHECK(lam[1] == poly(n, "y^2*v_x"));
}

TEST_CASE("Rees presentation of smooth and Darboux inputs", "[blowup]")
{
    ReesPresentation smooth = rees_presentation(a2_hyperbolic(), FULL, MonomialOrder::grevlex(2));
    CHECK(smooth.relations.size() == 2);

    ReesPresentation d = rees_presentation(darboux_x2y2(), FULL, MonomialOrder::grevlex(2));
    std::vector<Polynomial> deg11;
    for (const ReesRelation& rel : d.relations)
        if (rel.homological_degree == 1)
            deg11.push_back(rel.relation);
    REQUIRE(deg11.size() == 0); // e has weight zero, so it is carried as a fixed generator
    CHECK(d.fixed_gens2.size() == 1);

    // a moving degree-2 generator yields a (1,1) relation read off its coefficient
    GradedCdga shifted = darboux_x2y2();
    shifted.gens1.push_back({{"w_z", 1, {2}}, Polynomial(2)});
    shifted.gens2.push_back({{"f", 2, {1}}, {{"w_z", poly(XY, "y")}}});
    REQUIRE(validate_presentation(shifted).ok());
    ReesPresentation sr = rees_presentation(shifted, FULL, MonomialOrder::grevlex(2));
    bool found = false;
    for (const ReesRelation& rel : sr.relations)
        if (rel.homological_degree == 1) {
            CHECK(rel.relation == poly(sr.names, "v_y*w_z"));
            found = true;
        }
    CHECK(found);
}

TEST_CASE("intrinsic blow-up charts of (x^2y, xy^2)", "[blowup]")
{
    GradedCdga x = xy2_x2y();
    auto charts = blowup_charts(x, FULL);
    REQUIRE(charts.size() == 2);
    const Chart& cx = by_name(charts, "chart_x");
    const Chart& cy = by_name(charts, "chart_y");
    CHECK(cx.cdga.ring_names() == Names{"xi", "u_y"});
    CHECK(cy.cdga.ring_names() == Names{"u_x", "xi"});
    CHECK(cx.exceptional().weight == Weight{1});
    CHECK(cx.cdga.ring_vars[1].weight == Weight{-2});
    CHECK(ideal_equal(classical_truncation(cx.cdga), chart_ideal(cx, {"xi^2*u_y", "xi^2*u_y^2"})));
    CHECK(ideal_equal(classical_truncation(cy.cdga), chart_ideal(cy, {"xi^2*u_x", "xi^2*u_x^2"})));
    for (const Chart& c : charts) {
        CHECK(validate_presentation(c.cdga).ok());
        CHECK(crosscheck_truncation(c, x, FULL));
    }
}

TEST_CASE("blow-up of the smooth plane", "[blowup]")
{
    auto charts = blowup_charts(a2_hyperbolic(), FULL);
    REQUIRE(charts.size() == 2);
    for (const Chart& c : charts) {
        CHECK(c.cdga.gens1.empty());
        CHECK(c.cdga.gens2.empty());
        CHECK(crosscheck_truncation(c, a2_hyperbolic(), FULL));
    }
    CHECK_THROWS_AS(blowup_charts(a2_hyperbolic(), SubtorusBasis::trivial(1)), std::invalid_argument);
}

TEST_CASE("Darboux x^2y^2 chart", "[blowup]")
{
    GradedCdga x = darboux_x2y2();
    const Chart cx = by_name(blowup_charts(x, FULL), "chart_x");
    const Names& n = cx.cdga.ring_names();
    REQUIRE(cx.cdga.gens1.size() == 2);
    CHECK(cx.cdga.gens1[0].differential == poly(n, "2*xi^2*u_y^2"));
    CHECK(cx.cdga.gens1[1].differential == poly(n, "2*xi^2*u_y"));
    REQUIRE(cx.cdga.gens2.size() == 1);
    CHECK(cx.cdga.gens2[0].differential.at("w_x") == poly(n, "xi^2"));
    CHECK(cx.cdga.gens2[0].differential.at("w_y") == poly(n, "-xi^2*u_y"));
    CHECK(validate_presentation(cx.cdga).ok());
    CHECK(ideal_equal(classical_truncation(cx.cdga), chart_ideal(cx, {"xi^2*u_y"})));
    CHECK(crosscheck_truncation(cx, x, FULL));
    CHECK(dagger_check(cx.cdga, FULL));
}

TEST_CASE("Kirwan charts remove strict transforms", "[blowup]")
{
    GradedCdga a2 = a2_hyperbolic();
    auto charts = kirwan_charts(a2, FULL, saturation_ideal(a2, FULL));
    const Chart& cx = by_name(charts, "chart_x");
    const Chart& cy = by_name(charts, "chart_y");
    CHECK(show(cx.cdga.excluded.generators(), cx.cdga.ring_names(), MonomialOrder::grevlex(2)) ==
          std::vector<std::string>{"u_y"});
    CHECK(show(cy.cdga.excluded.generators(), cy.cdga.ring_names(), MonomialOrder::grevlex(2)) ==
          std::vector<std::string>{"u_x"});
    CHECK_FALSE(cx.fully_unstable);

    GradedCdga pos = all_positive();
    for (const Chart& c : kirwan_charts(pos, FULL, saturation_ideal(pos, FULL))) {
        CHECK(c.fully_unstable);
        CHECK(c.cdga.excluded.is_zero());
    }

    for (const Chart& c : kirwan_charts(a2, FULL, Ideal::unit(2))) {
        CHECK(c.cdga.excluded.is_unit());
        CHECK_FALSE(c.fully_unstable);
    }
}

TEST_CASE("blow-up is trivial away from the exceptional divisor", "[blowup]")
{
    for (const GradedCdga& x : {xy2_x2y(), darboux_x2y2(), xy_scene()}) {
        for (const Chart& c : blowup_charts(x, FULL)) {
            Ideal chart_sat = saturate(classical_truncation(c.cdga), c.xi());
            Ideal parent_sat = saturate(c.pull_back(classical_truncation(x)), c.xi());
            CHECK(ideal_equal(chart_sat, parent_sat));
            Polynomial unit = c.xi() - Polynomial::constant(c.cdga.nvars(), 1);
            CHECK(ideal_equal(ideal_sum(chart_sat, Ideal(c.cdga.nvars(), {unit})),
                              ideal_sum(c.pull_back(classical_truncation(x)), Ideal(c.cdga.nvars(), {unit}))));
        }
    }
}

TEST_CASE("truncation read from the Rees presentation", "[blowup]")
{
    for (const GradedCdga& x : {xy2_x2y(), darboux_x2y2(), xy_scene()}) {
        ReesPresentation lex = rees_presentation(x, FULL, MonomialOrder::lex(2));
        ReesPresentation grl = rees_presentation(x, FULL, MonomialOrder::grevlex(2));
        for (const Chart& c : blowup_charts(x, FULL)) {
            Ideal t = classical_truncation(c.cdga);
            CHECK(ideal_equal(rees_chart_truncation(lex, c), t));
            CHECK(ideal_equal(rees_chart_truncation(grl, c), t));
        }
    }
}

TEST_CASE("degree-2 generators do not change chart truncations", "[blowup]")
{
    GradedCdga x = darboux_x2y2();
    GradedCdga stripped = x;
    stripped.gens2.clear();
    auto a = blowup_charts(x, FULL);
    auto b = blowup_charts(stripped, FULL);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(ideal_equal(classical_truncation(a[i].cdga), classical_truncation(b[i].cdga)));
}

TEST_CASE("exceptional variable names avoid collisions", "[blowup]")
{
    GradedCdga x(1, {var0("xi", {1}), var0("u_y", {0}), var0("y", {-1})});
    const Chart c = blowup_charts(x, FULL).front();
    CHECK(c.cdga.ring_names() == Names{"xi_1", "u_y", "u_y_1"});
    CHECK(validate_presentation(c.cdga).ok());
}
