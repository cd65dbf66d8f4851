#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kirwan/cdga.hpp"
#include "kirwan/errors.hpp"
#include "kirwan/ideal.hpp"
#include "kirwan/lattice.hpp"

namespace kirwan {

inline constexpr std::size_t default_variable_cap = 16;
inline constexpr std::size_t default_degree_cap = 12;

/// Points of the truncation whose nonvanishing coordinates are exactly `support`.
struct Stratum {
    std::vector<std::size_t> support;
    std::size_t stabilizer_dim = 0;
    bool nonempty = false;
    friend bool operator==(const Stratum&, const Stratum&) = default;
};

struct StabilizerReport {
    std::vector<Stratum> strata;
    std::size_t max_dim = 0;
    /// True when no stratum meets the semistable locus (everything is excluded).
    bool semistable_empty = false;
    /// First entry of `maximal_subtori`; the trivial subtorus when max_dim = 0.
    SubtorusBasis maximal_subtorus;
    /// Distinct stabilizer subtori of dimension max_dim, canonical and sorted.
    std::vector<SubtorusBasis> maximal_subtori;
};

namespace detail {

inline std::vector<IntVector> support_weights(const GradedCdga& x, const std::vector<std::size_t>& support) {
    std::vector<IntVector> rows;
    for (std::size_t i : support)
        rows.push_back(x.ring_vars[i].weight.components());
    return rows;
}

// Is there a point of V(base) with the given support that lies off V(excluded)?
inline bool stratum_nonempty(const Ideal& truncation, const Ideal& excluded,
                             const std::vector<std::size_t>& support) {
    const std::size_t n = truncation.nvars();
    if (excluded.is_zero())
        return false;
    std::vector<bool> in(n, false);
    for (std::size_t i : support)
        in[i] = true;
    std::vector<std::size_t> outside;
    for (std::size_t i = 0; i < n; ++i)
        if (!in[i])
            outside.push_back(i);
    Ideal base = ideal_sum(truncation, Ideal::of_variables(n, outside));
    if (base.is_unit())
        return false;
    Polynomial prod = Polynomial::constant(n, 1);
    for (std::size_t i : support)
        prod *= Polynomial::variable(n, i);
    Ideal sat = saturate(base, prod);
    if (sat.is_unit())
        return false;
    for (const Polynomial& g : excluded.generators())
        if (saturate(sat, g).is_proper())
            return true;
    return false;
}

} // namespace detail

/// Enumerates every coordinate support, its stabilizer dimension and whether
/// it meets the semistable part of the classical truncation.
inline StabilizerReport stabilizer_stratification(const GradedCdga& x,
                                                  std::size_t variable_cap = default_variable_cap) {
    require_valid(x);
    const std::size_t n = x.nvars();
    const std::size_t k = x.torus_rank;
    if (n > variable_cap)
        throw TooManyVariables("stabilizer stratification: " + std::to_string(n) +
                               " ring variables exceed the cap of " + std::to_string(variable_cap));

    std::vector<std::vector<std::size_t>> supports;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1)
                s.push_back(i);
        supports.push_back(std::move(s));
    }
    std::sort(supports.begin(), supports.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });

    const Ideal truncation = classical_truncation(x);
    StabilizerReport rep;
    bool any = false;
    for (auto& s : supports) {
        Stratum st;
        st.stabilizer_dim = k - integer_rank(detail::support_weights(x, s));
        st.nonempty = detail::stratum_nonempty(truncation, x.excluded, s);
        st.support = std::move(s);
        if (st.nonempty) {
            rep.max_dim = any ? std::max(rep.max_dim, st.stabilizer_dim) : st.stabilizer_dim;
            any = true;
        }
        rep.strata.push_back(std::move(st));
    }
    rep.semistable_empty = !any;
    if (!any)
        rep.max_dim = 0;

    if (rep.max_dim > 0) {
        for (const Stratum& st : rep.strata) {
            if (!st.nonempty || st.stabilizer_dim != rep.max_dim)
                continue;
            SubtorusBasis h(k, integer_kernel(detail::support_weights(x, st.support), k));
            if (std::find(rep.maximal_subtori.begin(), rep.maximal_subtori.end(), h) == rep.maximal_subtori.end())
                rep.maximal_subtori.push_back(std::move(h));
        }
        std::sort(rep.maximal_subtori.begin(), rep.maximal_subtori.end());
        rep.maximal_subtorus = rep.maximal_subtori.front();
    } else {
        rep.maximal_subtorus = SubtorusBasis::trivial(k);
    }
    return rep;
}

/// The maximal-stabilizer locus: the fixed locus of the maximal stabilizing subtorus.
inline std::pair<GradedCdga, SubtorusBasis> xmax(const GradedCdga& x,
                                                 std::size_t variable_cap = default_variable_cap) {
    StabilizerReport rep = stabilizer_stratification(x, variable_cap);
    if (rep.max_dim == 0)
        throw NoPositiveDimensionalStabilizer("xmax: every stabilizer on the semistable locus is finite");
    return {fixed_locus(x, rep.maximal_subtorus), rep.maximal_subtorus};
}

namespace detail {

// Primitive generator of the kernel of the columns `cols` of the pairing matrix,
// if that kernel is one-dimensional with all entries of one sign.
inline std::optional<IntVector> positive_circuit(const std::vector<IntVector>& pairings,
                                                 const std::vector<std::size_t>& cols, std::size_t rank) {
    // rows of the transposed system: one equation per H basis vector
    std::vector<IntVector> rows(rank, IntVector(cols.size(), 0));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rank; ++r)
            rows[r][c] = pairings[cols[c]][r];
    auto ker = integer_kernel(rows, cols.size());
    if (ker.size() != 1)
        return std::nullopt;
    IntVector v = ker.front();
    const bool pos = std::all_of(v.begin(), v.end(), [](std::int64_t a) { return a > 0; });
    const bool neg = std::all_of(v.begin(), v.end(), [](std::int64_t a) { return a < 0; });
    if (!pos && !neg)
        return std::nullopt;
    if (neg)
        for (auto& a : v)
            a = -a;
    return v;
}

} // namespace detail

/// Radical-level ideal of the GIT saturation of the H-fixed locus: its zero set
/// is the set of points whose H-orbit closure meets the fixed locus.
inline Ideal saturation_ideal(const GradedCdga& x, const SubtorusBasis& h,
                              std::size_t degree_cap = default_degree_cap) {
    const std::size_t n = x.nvars();
    if (h.torus_rank() != x.torus_rank)
        throw std::invalid_argument("saturation_ideal: subtorus lives in a torus of the wrong rank");

    if (h.rank() == 1) {
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t p = h.pairing(x.ring_vars[i].weight).front();
            if (p > 0)
                pos.push_back(i);
            else if (p < 0)
                neg.push_back(i);
        }
        return intersect(Ideal::of_variables(n, pos), Ideal::of_variables(n, neg));
    }

    // General subtorus: minimal invariant monomials through moving variables
    // have circuit supports; at radical level each contributes the product of
    // its support.
    const std::vector<std::size_t> moving = moving_ring_indices(x, h);
    std::vector<IntVector> pairings;
    for (std::size_t i : moving)
        pairings.push_back(h.pairing(x.ring_vars[i].weight));

    std::vector<Polynomial> gens;
    const std::size_t m = moving.size();
    if (m > 16)
        throw TooManyVariables("saturation_ideal: too many moving variables");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size > h.rank() + 1)
            continue;
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < m; ++c)
            if (mask >> c & 1)
                cols.push_back(c);
        auto circuit = detail::positive_circuit(pairings, cols, h.rank());
        if (!circuit)
            continue;
        std::int64_t degree = 0;
        for (std::int64_t a : *circuit)
            degree += a;
        if (degree > static_cast<std::int64_t>(degree_cap))
            throw DegreeCapReached("saturation_ideal: an invariant monomial of degree " + std::to_string(degree) +
                                   " exceeds the cap of " + std::to_string(degree_cap));
        Polynomial g = Polynomial::constant(n, 1);
        for (std::size_t c : cols)
            g *= Polynomial::variable(n, moving[c]);
        gens.push_back(std::move(g));
    }
    return Ideal(n, std::move(gens));
}

} // namespace kirwan
