#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "kirwan/reduction.hpp"

using namespace kirwan;
using namespace kirwan::test;

namespace {

std::vector<std::string> excluded_strings(const ReductionNode& n) {
    return show(n.cdga.excluded.generators(), n.cdga.ring_names(), MonomialOrder::grevlex(n.cdga.nvars()));
}

} // namespace

TEST_CASE("reduction of the hyperbolic plane", "[reduction]")
{
    ReductionNode root = stabilizer_reduce(a2_hyperbolic());
    CHECK(root.stabilizer.max_dim == 1);
    CHECK(tree_depth(root) == 1);
    REQUIRE(root.children.size() == 2);
    CHECK(root.children[0].id == "root/chart_x");
    CHECK(root.children[1].id == "root/chart_y");
    CHECK(excluded_strings(root.children[0]) == std::vector<std::string>{"u_y"});
    CHECK(excluded_strings(root.children[1]) == std::vector<std::string>{"u_x"});
    for (const ReductionNode* leaf : leaves(root)) {
        REQUIRE(leaf->leaf_report);
        CHECK(leaf->leaf_report->dm);
        CHECK(leaf->leaf_report->quasi_smooth);
        CHECK(leaf->leaf_report->vdim == 1);
        CHECK_FALSE(leaf->fully_unstable);
        for (const InvariantRecord& r : leaf->checks)
            CHECK(r.passed);
    }
}

TEST_CASE("reduction of the Darboux x^2y^2 scene", "[reduction]")
{
    ReductionNode root = stabilizer_reduce(darboux_x2y2());
    CHECK(tree_depth(root) == 1);
    auto ls = leaves(root);
    REQUIRE(ls.size() == 2);
    for (const ReductionNode* leaf : ls) {
        const ObstructionReport& r = *leaf->leaf_report;
        CHECK(r.dm);
        CHECK(r.dagger);
        CHECK(r.vdim == 0);
        REQUIRE(r.e_ranks);
        CHECK(r.e_ranks->first == 1);
        CHECK(r.e_ranks->second == 1);
        CHECK_FALSE(r.quasi_smooth);
    }
}

TEST_CASE("torus-free input is a single leaf", "[reduction]")
{
    GradedCdga k0(0, {var0("x", {}), var0("y", {})});
    ReductionNode root = stabilizer_reduce(k0);
    CHECK(root.is_leaf());
    CHECK(root.leaf_report->vdim == 2);
}

TEST_CASE("unbalanced weights leave nothing semistable", "[reduction]")
{
    ReductionNode root = stabilizer_reduce(all_positive());
    REQUIRE(root.children.size() == 2);
    for (const ReductionNode* leaf : leaves(root)) {
        CHECK(leaf->fully_unstable);
        CHECK(leaf->leaf_report->fully_unstable);
        CHECK_FALSE(leaf->leaf_report->e_ranks);
    }
}

TEST_CASE("the depth fuse trips", "[reduction]")
{
    ReductionConfig cfg;
    cfg.depth_fuse = 0;
    CHECK_THROWS_AS(stabilizer_reduce(a2_hyperbolic(), cfg), DepthExceeded);
}

TEST_CASE("rank-two reduction branches and terminates", "[reduction]")
{
    GradedCdga x(2, {var0("x", {1, 0}), var0("y", {-1, 0}), var0("z", {0, 1}), var0("w", {0, -1})});
    ReductionNode root = stabilizer_reduce(x);
    CHECK(root.stabilizer.max_dim == 2);
    for (const ReductionNode* leaf : leaves(root)) {
        CHECK(leaf->leaf_report->dm);
        CHECK(leaf->depth <= 2);
    }
    CHECK(tree_depth(root) == 2);
}

TEST_CASE("quasi_smooth_check and dagger_check", "[reduction]")
{
    CHECK(quasi_smooth_check(a2_hyperbolic()));
    CHECK(quasi_smooth_check(xy2_x2y()));
    CHECK_FALSE(quasi_smooth_check(darboux_x2y2()));
    CHECK(dagger_check(a2_hyperbolic(), SubtorusBasis::full(1)));
}

TEST_CASE("obstruction_report on hand-built leaves", "[reduction]")
{
    // smooth surface with a circle action and no relations
    GradedCdga chart(1, {var0("xi", {1}), var0("v", {-2})});
    chart.excluded = ideal({"xi", "v"}, {"v"});
    ObstructionReport r = obstruction_report(chart);
    CHECK(r.vdim == 1);
    CHECK(r.quasi_smooth);
    CHECK(r.dm);

    // a moving degree-2 generator with a unit coefficient on a fixed target breaks dagger
    GradedCdga bad(1, {var0("x", {1}), var0("z", {0})});
    bad.gens1.push_back({{"w1", 1, {1}}, Polynomial(2)});
    bad.gens2.push_back({{"y2", 2, {1}}, {{"w1", poly({"x", "z"}, "1")}}});
    ObstructionReport rb = obstruction_report(bad);
    CHECK_FALSE(rb.dagger);
    CHECK_FALSE(rb.e_ranks);
}

TEST_CASE("reduction is deterministic", "[reduction]")
{
    ReductionConfig cfg;
    cfg.seed = 42;
    ReductionNode a = stabilizer_reduce(darboux_x2y2(), cfg);
    ReductionNode b = stabilizer_reduce(darboux_x2y2(), cfg);
    auto la = leaves(a), lb = leaves(b);
    REQUIRE(la.size() == lb.size());
    for (std::size_t i = 0; i < la.size(); ++i) {
        CHECK(la[i]->id == lb[i]->id);
        CHECK(la[i]->cdga == lb[i]->cdga);
        CHECK(la[i]->leaf_report->e_ranks == lb[i]->leaf_report->e_ranks);
    }
}
