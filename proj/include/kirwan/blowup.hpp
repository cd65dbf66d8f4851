#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kirwan/cdga.hpp"
#include "kirwan/errors.hpp"
#include "kirwan/groebner.hpp"
#include "kirwan/ideal.hpp"

namespace kirwan {

/// Rows: dividends f_i; columns: divisors g_j; f_i = sum_j entries[i][j] * g_j.
struct LambdaMatrix {
    std::vector<std::vector<Polynomial>> entries;
};

inline LambdaMatrix lambda_matrix(const std::vector<Polynomial>& fs, const std::vector<Polynomial>& gs,
                                  const MonomialOrder& order) {
    LambdaMatrix out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        DivisionResult d = divide(fs[i], gs, order);
        if (!d.remainder.is_zero())
            throw NotInIdeal(i, "lambda_matrix: dividend " + std::to_string(i) +
                                    " leaves a nonzero remainder on division by the center");
        out.entries.push_back(std::move(d.quotients));
    }
    return out;
}

/// Property (†) at presentation level: every H-moving degree-2 differential
/// vanishes once the H-moving ring variables are set to zero.
inline bool dagger_check(const GradedCdga& x, const SubtorusBasis& h) {
    const std::vector<std::size_t> moving = moving_ring_indices(x, h);
    std::vector<bool> is_moving(x.nvars(), false);
    for (std::size_t i : moving)
        is_moving[i] = true;
    for (const Gen2& y : x.gens2) {
        if (h.fixes(y.var.weight))
            continue;
        for (const auto& [target, coef] : y.differential)
            for (const Term& t : coef.terms()) {
                bool hits = false;
                for (std::size_t i : moving)
                    hits = hits || t.mono[i] > 0;
                if (!hits)
                    return false;
            }
    }
    return true;
}

namespace detail {

inline void require_blowup_input(const GradedCdga& x, const SubtorusBasis& h, const char* who) {
    require_valid(x);
    if (h.torus_rank() != x.torus_rank)
        throw std::invalid_argument(std::string(who) + ": subtorus lives in a torus of the wrong rank");
    if (moving_ring_indices(x, h).empty())
        throw std::invalid_argument(std::string(who) + ": the subtorus moves no ring variable");
    if (!dagger_check(x, h))
        throw DaggerViolation(std::string(who) +
                              ": a moving degree-2 differential does not vanish on the fixed locus");
}

} // namespace detail

struct ReesRelation {
    int homological_degree;
    int homogeneous_degree;
    Polynomial relation; // over ReesPresentation::names
    std::string label;
};

/// Extended Rees algebra of the fixed-locus center. The extended ring has the
/// base ring variables, t_inv (homogeneous degree -1), one v per moving ring
/// variable (degree 1) and the degree-1 generators as formal symbols.
struct ReesPresentation {
    GradedCdga base;
    SubtorusBasis subtorus;
    std::vector<std::string> names;
    std::vector<int> homogeneous_degree;
    std::vector<std::size_t> moving;  // moving ring indices of base
    std::size_t t_inv = 0;            // index into names
    std::vector<std::size_t> v;       // v[j] is the slope symbol of moving[j]
    std::size_t gens1_offset = 0;     // gens1[i] is names[gens1_offset + i]
    std::vector<ReesRelation> relations;
    std::vector<Gen1> fixed_gens1;
    std::vector<Gen2> fixed_gens2;

    std::size_t nvars() const noexcept { return names.size(); }
};

inline ReesPresentation rees_presentation(const GradedCdga& x, const SubtorusBasis& h,
                                          const MonomialOrder& order) {
    detail::require_blowup_input(x, h, "rees_presentation");
    ReesPresentation r;
    r.base = x;
    r.subtorus = h;
    r.moving = moving_ring_indices(x, h);
    const std::size_t n = x.nvars();

    std::set<std::string> taken = x.all_names();
    r.names = x.ring_names();
    r.homogeneous_degree.assign(n, 0);
    r.t_inv = r.names.size();
    r.names.push_back(fresh_name("t_inv", taken));
    taken.insert(r.names.back());
    r.homogeneous_degree.push_back(-1);
    for (std::size_t i : r.moving) {
        r.v.push_back(r.names.size());
        r.names.push_back(fresh_name("v_" + x.ring_vars[i].name, taken));
        taken.insert(r.names.back());
        r.homogeneous_degree.push_back(1);
    }
    r.gens1_offset = r.names.size();
    for (const Gen1& g : x.gens1) {
        r.names.push_back(g.var.name);
        r.homogeneous_degree.push_back(0);
    }
    const std::size_t N = r.names.size();

    std::vector<std::size_t> embed(n);
    for (std::size_t i = 0; i < n; ++i)
        embed[i] = i;
    auto lift = [&](const Polynomial& p) { return p.relabel(embed, N); };
    auto sym = [&](std::size_t idx) { return Polynomial::variable(N, idx); };

    for (std::size_t j = 0; j < r.moving.size(); ++j)
        r.relations.push_back({0, 0, sym(r.t_inv) * sym(r.v[j]) - sym(r.moving[j]),
                               "center(" + r.names[r.moving[j]] + ")"});

    std::vector<Polynomial> center;
    for (std::size_t i : r.moving)
        center.push_back(Polynomial::variable(n, i));

    std::vector<Polynomial> moving_fs;
    std::vector<std::string> moving_names;
    for (const Gen1& g : x.gens1) {
        if (h.fixes(g.var.weight)) {
            r.fixed_gens1.push_back(g);
        } else {
            moving_fs.push_back(g.differential);
            moving_names.push_back(g.var.name);
        }
    }
    LambdaMatrix lam = lambda_matrix(moving_fs, center, order);
    for (std::size_t i = 0; i < moving_fs.size(); ++i) {
        Polynomial rel(N);
        for (std::size_t j = 0; j < center.size(); ++j)
            rel += lift(lam.entries[i][j]) * sym(r.v[j]);
        r.relations.push_back({0, 1, std::move(rel), "lambda(" + moving_names[i] + ")"});
    }

    for (const Gen2& y : x.gens2) {
        if (h.fixes(y.var.weight)) {
            r.fixed_gens2.push_back(y);
            continue;
        }
        Polynomial rel(N);
        for (const auto& [target, coef] : y.differential) {
            const std::size_t k = *x.gen1_index(target);
            LambdaMatrix beta = lambda_matrix({coef}, center, order);
            for (std::size_t l = 0; l < center.size(); ++l)
                rel += lift(beta.entries[0][l]) * sym(r.v[l]) * sym(r.gens1_offset + k);
        }
        r.relations.push_back({1, 1, std::move(rel), "beta(" + y.var.name + ")"});
    }
    return r;
}

/// One affine piece of the (Kirwan) blow-up, inverting a single moving ring variable.
struct Chart {
    std::string name;
    std::string center;             // parent ring variable inverted by this chart
    std::size_t center_index = 0;   // its index in the parent ring
    std::size_t exceptional_index = 0; // index of the exceptional variable in the chart ring
    std::string parent_id;
    GradedCdga cdga;
    std::vector<Polynomial> substitution; // parent ring variable i -> chart polynomial
    bool fully_unstable = false;

    const GradedVariable& exceptional() const { return cdga.ring_vars[exceptional_index]; }
    Polynomial xi() const { return Polynomial::variable(cdga.nvars(), exceptional_index); }

    Polynomial pull_back(const Polynomial& p) const { return p.substitute(substitution, cdga.nvars()); }
    Ideal pull_back(const Ideal& id) const {
        std::vector<Polynomial> gens;
        for (const Polynomial& g : id.generators())
            gens.push_back(pull_back(g));
        return Ideal(cdga.nvars(), std::move(gens));
    }
};

namespace detail {

inline Chart make_chart(const GradedCdga& x, const SubtorusBasis& h, std::size_t m) {
    const std::size_t n = x.nvars();
    const std::vector<std::size_t> moving = moving_ring_indices(x, h);
    std::vector<bool> is_moving(n, false);
    for (std::size_t i : moving)
        is_moving[i] = true;

    Chart c;
    c.center = x.ring_vars[m].name;
    c.center_index = m;
    c.exceptional_index = m;
    c.name = "chart_" + c.center;

    std::set<std::string> taken = x.all_names();
    const Weight wxi = x.ring_vars[m].weight;
    std::vector<GradedVariable> ring = x.ring_vars;
    ring[m].name = fresh_name("xi", taken);
    taken.insert(ring[m].name);
    for (std::size_t i : moving) {
        if (i == m)
            continue;
        ring[i].name = fresh_name("u_" + x.ring_vars[i].name, taken);
        taken.insert(ring[i].name);
        ring[i].weight = x.ring_vars[i].weight - wxi;
    }
    Polynomial xi = Polynomial::variable(n, m);
    for (std::size_t i = 0; i < n; ++i)
        c.substitution.push_back(is_moving[i] && i != m ? xi * Polynomial::variable(n, i)
                                                        : Polynomial::variable(n, i));

    GradedCdga out(x.torus_rank, std::move(ring));
    std::set<std::string> moving_gens1;
    for (const Gen1& g : x.gens1) {
        Polynomial d = g.differential.substitute(c.substitution, n);
        if (h.fixes(g.var.weight)) {
            out.gens1.push_back({g.var, std::move(d)});
        } else {
            moving_gens1.insert(g.var.name);
            out.gens1.push_back({{g.var.name, 1, g.var.weight - wxi}, exact_divide(d, xi)});
        }
    }
    for (const Gen2& y : x.gens2) {
        const bool moving_y = !h.fixes(y.var.weight);
        Gen2 ny{y.var, {}};
        if (moving_y)
            ny.var.weight = y.var.weight - wxi;
        for (const auto& [target, coef] : y.differential) {
            Polynomial d = coef.substitute(c.substitution, n);
            if (moving_gens1.contains(target))
                d *= xi;
            if (moving_y)
                d = exact_divide(d, xi);
            if (!d.is_zero())
                ny.differential.emplace(target, std::move(d));
        }
        out.gens2.push_back(std::move(ny));
    }
    c.cdga = std::move(out);
    c.cdga.excluded = c.pull_back(x.excluded);
    return c;
}

// Does the chart's classical truncation meet the complement of V(excluded)?
inline bool has_semistable_points(const GradedCdga& x) {
    const Ideal trunc = classical_truncation(x);
    for (const Polynomial& g : x.excluded.generators())
        if (saturate(trunc, g).is_proper())
            return true;
    return false;
}

} // namespace detail

/// Charts of the equivariant blow-up of X along its H-fixed locus, one per
/// H-moving ring variable, in ring-variable order.
inline std::vector<Chart> blowup_charts(const GradedCdga& x, const SubtorusBasis& h) {
    detail::require_blowup_input(x, h, "blowup_charts");
    std::vector<Chart> charts;
    for (std::size_t m : moving_ring_indices(x, h))
        charts.push_back(detail::make_chart(x, h, m));
    return charts;
}

/// Blow-up charts with the strict transform of V(J) removed. The chart's
/// excluded ideal becomes saturate(phi(J), xi) * phi(parent excluded), whose
/// zero set is the union of both removed loci.
inline std::vector<Chart> kirwan_charts(const GradedCdga& x, const SubtorusBasis& h, const Ideal& j) {
    std::vector<Chart> charts = blowup_charts(x, h);
    for (Chart& c : charts) {
        Ideal strict = saturate(c.pull_back(j), c.xi());
        c.cdga.excluded = canonical(ideal_product(strict, c.pull_back(x.excluded)));
        c.fully_unstable = !detail::has_semistable_points(c.cdga);
    }
    return charts;
}

/// The chart's classical truncation, computed two ways: from the chart
/// presentation, and directly from the parent's relations by pulling back the
/// H-fixed ones and dividing the pulled-back H-moving ones by xi.
inline bool crosscheck_truncation(const Chart& chart, const GradedCdga& parent, const SubtorusBasis& h) {
    const Ideal derived = classical_truncation(chart.cdga);

    const std::size_t n = parent.nvars();
    const std::size_t cn = chart.cdga.nvars();
    if (cn != n)
        return false;
    std::vector<bool> moving(n, false);
    for (std::size_t i = 0; i < n; ++i)
        moving[i] = !h.fixes(parent.ring_vars[i].weight);
    if (!moving[chart.center_index])
        return false;
    const Polynomial xi = Polynomial::variable(cn, chart.center_index);
    std::vector<Polynomial> phi;
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial image = Polynomial::variable(cn, i);
        if (moving[i] && i != chart.center_index)
            image *= xi;
        phi.push_back(std::move(image));
    }
    std::vector<Polynomial> intrinsic;
    for (const Gen1& g : parent.gens1) {
        Polynomial p = g.differential.substitute(phi, cn);
        if (h.fixes(g.var.weight)) {
            intrinsic.push_back(std::move(p));
        } else {
            try {
                intrinsic.push_back(exact_divide(p, xi));
            } catch (const NotDivisible&) {
                return false;
            }
        }
    }
    return ideal_equal(derived, Ideal(cn, std::move(intrinsic)));
}

/// Specializes a polynomial over the extended Rees ring to a chart:
/// t_inv -> xi, the chart's own slope symbol -> 1, the others -> their slope
/// variables, base ring variables through the chart substitution, and
/// degree-1 symbols to zero.
inline Polynomial rees_to_chart(const ReesPresentation& r, const Chart& chart, const Polynomial& p) {
    const std::size_t cn = chart.cdga.nvars();
    std::vector<Polynomial> images(r.nvars(), Polynomial(cn));
    for (std::size_t i = 0; i < r.base.nvars(); ++i)
        images[i] = chart.substitution[i];
    images[r.t_inv] = chart.xi();
    for (std::size_t j = 0; j < r.moving.size(); ++j)
        images[r.v[j]] = r.moving[j] == chart.center_index ? Polynomial::constant(cn, 1)
                                                           : Polynomial::variable(cn, r.moving[j]);
    return p.substitute(images, cn);
}

/// Chart truncation read off the Rees presentation: images of the
/// homological-degree-0 relations plus the pulled-back fixed relations.
inline Ideal rees_chart_truncation(const ReesPresentation& r, const Chart& chart) {
    std::vector<Polynomial> gens;
    for (const ReesRelation& rel : r.relations)
        if (rel.homological_degree == 0)
            gens.push_back(rees_to_chart(r, chart, rel.relation));
    for (const Gen1& g : r.fixed_gens1)
        gens.push_back(chart.pull_back(g.differential));
    return Ideal(chart.cdga.nvars(), std::move(gens));
}

} // namespace kirwan
