#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kirwan/errors.hpp"
#include "kirwan/ideal.hpp"
#include "kirwan/lattice.hpp"
#include "kirwan/polynomial.hpp"

namespace kirwan {

/// A character of the torus (Z^k).
class Weight {
public:
    Weight() = default;
    explicit Weight(IntVector components) : c_(std::move(components)) {}
    Weight(std::initializer_list<std::int64_t> components) : c_(components) {}

    static Weight zero(std::size_t k) { return Weight(IntVector(k, 0)); }

    std::size_t size() const noexcept { return c_.size(); }
    std::int64_t operator[](std::size_t i) const { return c_[i]; }
    const IntVector& components() const noexcept { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x == 0; });
    }

    std::int64_t dot(const IntVector& h) const {
        if (h.size() != c_.size())
            throw std::invalid_argument("weight pairing: length mismatch");
        std::int64_t s = 0;
        for (std::size_t i = 0; i < c_.size(); ++i)
            s += c_[i] * h[i];
        return s;
    }

    Weight& operator+=(const Weight& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] += o.c_[i];
        return *this;
    }
    Weight& operator-=(const Weight& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] -= o.c_[i];
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    Weight operator-() const { return Weight::zero(size()) - *this; }
    Weight scaled(std::int64_t s) const {
        Weight w = *this;
        for (auto& x : w.c_)
            x *= s;
        return w;
    }

    friend bool operator==(const Weight&, const Weight&) = default;
    friend auto operator<=>(const Weight&, const Weight&) = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i)
            s += (i ? "," : "") + std::to_string(c_[i]);
        return s + ")";
    }

private:
    void check(const Weight& o) const {
        if (o.size() != size())
            throw std::invalid_argument("weight arithmetic: length mismatch");
    }
    IntVector c_;
};

struct GradedVariable {
    std::string name;
    int degree = 0;
    Weight weight;
    friend bool operator==(const GradedVariable&, const GradedVariable&) = default;
};

/// Degree-1 generator with d(w) in the degree-0 ring.
struct Gen1 {
    GradedVariable var;
    Polynomial differential;
    friend bool operator==(const Gen1&, const Gen1&) = default;
};

/// Degree-2 generator; d(y) is an R0-linear combination of degree-1 generators,
/// keyed by generator name.
struct Gen2 {
    GradedVariable var;
    std::map<std::string, Polynomial> differential;
    friend bool operator==(const Gen2&, const Gen2&) = default;
};

/// Standard-form presentation of a torus-equivariant derived affine scheme:
/// a polynomial ring in weighted degree-0 variables, with free generators in
/// homological degrees 1 and 2.
///
/// `excluded` records an open complement: the presentation describes the
/// locus away from V(excluded). The unit ideal (the default) removes nothing;
/// the zero ideal removes everything.
struct GradedCdga {
    std::size_t torus_rank = 0;
    std::vector<GradedVariable> ring_vars;
    std::vector<Gen1> gens1;
    std::vector<Gen2> gens2;
    Ideal excluded;

    GradedCdga() = default;
    GradedCdga(std::size_t k, std::vector<GradedVariable> ring, std::vector<Gen1> g1 = {},
               std::vector<Gen2> g2 = {})
        : torus_rank(k), ring_vars(std::move(ring)), gens1(std::move(g1)), gens2(std::move(g2)),
          excluded(Ideal::unit(ring_vars.size())) {}

    std::size_t nvars() const noexcept { return ring_vars.size(); }

    std::vector<std::string> ring_names() const {
        std::vector<std::string> out;
        for (const auto& v : ring_vars)
            out.push_back(v.name);
        return out;
    }

    std::optional<std::size_t> ring_index(const std::string& name) const {
        for (std::size_t i = 0; i < ring_vars.size(); ++i)
            if (ring_vars[i].name == name)
                return i;
        return std::nullopt;
    }

    std::optional<std::size_t> gen1_index(const std::string& name) const {
        for (std::size_t i = 0; i < gens1.size(); ++i)
            if (gens1[i].var.name == name)
                return i;
        return std::nullopt;
    }

    Weight monomial_weight(const Monomial& m) const {
        Weight w = Weight::zero(torus_rank);
        for (std::size_t i = 0; i < ring_vars.size(); ++i)
            if (m[i] != 0)
                w += ring_vars[i].weight.scaled(m[i]);
        return w;
    }

    /// All names across degrees, for collision checks.
    std::set<std::string> all_names() const {
        std::set<std::string> s;
        for (const auto& v : ring_vars)
            s.insert(v.name);
        for (const auto& g : gens1)
            s.insert(g.var.name);
        for (const auto& g : gens2)
            s.insert(g.var.name);
        return s;
    }

    friend bool operator==(const GradedCdga& a, const GradedCdga& b) {
        return a.torus_rank == b.torus_rank && a.ring_vars == b.ring_vars && a.gens1 == b.gens1 &&
               a.gens2 == b.gens2 && a.excluded.nvars() == b.excluded.nvars() &&
               a.excluded.generators() == b.excluded.generators();
    }
};

/// Returns `base` if unused, otherwise base_1, base_2, ...
inline std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.contains(base))
        return base;
    for (std::size_t i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!taken.contains(candidate))
            return candidate;
    }
}

/// Basis of a subtorus, as integer cocharacter vectors; linearly independent.
class SubtorusBasis {
public:
    SubtorusBasis() = default;
    SubtorusBasis(std::size_t torus_rank, std::vector<IntVector> basis)
        : k_(torus_rank), basis_(std::move(basis)) {
        for (const auto& v : basis_)
            if (v.size() != k_)
                throw std::invalid_argument("subtorus: basis vector has wrong length");
        if (integer_rank(basis_) != basis_.size())
            throw std::invalid_argument("subtorus: basis vectors are linearly dependent");
    }

    static SubtorusBasis full(std::size_t k) {
        std::vector<IntVector> b;
        for (std::size_t i = 0; i < k; ++i) {
            IntVector e(k, 0);
            e[i] = 1;
            b.push_back(std::move(e));
        }
        return {k, std::move(b)};
    }

    static SubtorusBasis trivial(std::size_t k) { return {k, {}}; }

    std::size_t torus_rank() const noexcept { return k_; }
    std::size_t rank() const noexcept { return basis_.size(); }
    const std::vector<IntVector>& basis() const noexcept { return basis_; }

    /// The pairings <weight, h> for every basis vector h.
    IntVector pairing(const Weight& w) const {
        IntVector out;
        for (const auto& h : basis_)
            out.push_back(w.dot(h));
        return out;
    }

    bool fixes(const Weight& w) const {
        for (const auto& h : basis_)
            if (w.dot(h) != 0)
                return false;
        return true;
    }

    SubtorusBasis canonical() const { return {k_, canonical_span(basis_, k_)}; }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (i)
                s += ';';
            for (std::size_t j = 0; j < basis_[i].size(); ++j)
                s += (j ? "," : "") + std::to_string(basis_[i][j]);
        }
        return s;
    }

    friend bool operator==(const SubtorusBasis&, const SubtorusBasis&) = default;
    friend auto operator<=>(const SubtorusBasis&, const SubtorusBasis&) = default;

private:
    std::size_t k_ = 0;
    std::vector<IntVector> basis_;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const noexcept { return violations.empty(); }
};

inline ValidationReport validate_presentation(const GradedCdga& x) {
    ValidationReport rep;
    auto bad = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };
    const std::size_t n = x.nvars();
    const auto names = x.ring_names();
    const MonomialOrder order = MonomialOrder::grevlex(n);

    std::set<std::string> seen;
    auto check_var = [&](const GradedVariable& v, int degree, const char* where) {
        if (v.name.empty())
            bad(std::string(where) + ": empty name");
        if (!seen.insert(v.name).second)
            bad("name collision: '" + v.name + "'");
        if (v.degree != degree)
            bad(std::string(where) + " '" + v.name + "': homological degree " + std::to_string(v.degree) +
                ", expected " + std::to_string(degree));
        if (v.weight.size() != x.torus_rank)
            bad(std::string(where) + " '" + v.name + "': weight " + v.weight.to_string() +
                " does not have length " + std::to_string(x.torus_rank));
    };
    for (const auto& v : x.ring_vars)
        check_var(v, 0, "ring variable");
    for (const auto& g : x.gens1)
        check_var(g.var, 1, "gens1");
    for (const auto& g : x.gens2)
        check_var(g.var, 2, "gens2");
    if (!rep.ok())
        return rep; // weights of the wrong length make the remaining checks meaningless

    for (const auto& g : x.gens1) {
        if (g.differential.nvars() != n) {
            bad("gens1 '" + g.var.name + "': differential over the wrong ring");
            continue;
        }
        for (const Term& t : g.differential.terms()) {
            Weight w = x.monomial_weight(t.mono);
            if (w != g.var.weight)
                bad("gens1 '" + g.var.name + "': term " +
                    Polynomial::monomial(t.mono, t.coef).to_string(names, order) + " has weight " +
                    w.to_string() + " but the generator has weight " + g.var.weight.to_string());
        }
    }

    for (const auto& y : x.gens2) {
        Polynomial d2(n);
        bool usable = true;
        for (const auto& [target, coef] : y.differential) {
            auto idx = x.gen1_index(target);
            if (!idx) {
                bad("gens2 '" + y.var.name + "': unknown gens1 target '" + target + "'");
                usable = false;
                continue;
            }
            if (coef.nvars() != n) {
                bad("gens2 '" + y.var.name + "': coefficient of '" + target + "' over the wrong ring");
                usable = false;
                continue;
            }
            const Gen1& w = x.gens1[*idx];
            for (const Term& t : coef.terms()) {
                Weight tw = x.monomial_weight(t.mono) + w.var.weight;
                if (tw != y.var.weight)
                    bad("gens2 '" + y.var.name + "': term " +
                        Polynomial::monomial(t.mono, t.coef).to_string(names, order) + "*" + target +
                        " has weight " + tw.to_string() + " but the generator has weight " +
                        y.var.weight.to_string());
            }
            if (w.differential.nvars() == n)
                d2 += coef * w.differential;
        }
        if (usable && !d2.is_zero())
            bad("gens2 '" + y.var.name + "': d^2 = " + d2.to_string(names, order) + " is nonzero");
    }

    if (x.excluded.nvars() != n)
        bad("excluded ideal is over the wrong ring");
    return rep;
}

inline void require_valid(const GradedCdga& x) {
    ValidationReport rep = validate_presentation(x);
    if (!rep.ok())
        throw InvalidPresentation("invalid presentation: " + rep.violations.front());
}

/// pi_0: the ideal of the degree-0 ring generated by the degree-1 differentials.
inline Ideal classical_truncation(const GradedCdga& x) {
    std::vector<Polynomial> gens;
    for (const auto& g : x.gens1)
        gens.push_back(g.differential);
    return Ideal(x.nvars(), std::move(gens));
}

/// Partition into H-fixed and H-moving items, preserving order.
inline std::pair<std::vector<GradedVariable>, std::vector<GradedVariable>>
weight_split(const std::vector<GradedVariable>& items, const SubtorusBasis& h) {
    std::vector<GradedVariable> fixed, moving;
    for (const auto& v : items)
        (h.fixes(v.weight) ? fixed : moving).push_back(v);
    return {std::move(fixed), std::move(moving)};
}

/// Indices of H-moving ring variables.
inline std::vector<std::size_t> moving_ring_indices(const GradedCdga& x, const SubtorusBasis& h) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < x.nvars(); ++i)
        if (!h.fixes(x.ring_vars[i].weight))
            out.push_back(i);
    return out;
}

/// Derived fixed locus: keep H-fixed generators, set H-moving ring variables
/// to zero and drop terms through H-moving degree-1 generators.
inline GradedCdga fixed_locus(const GradedCdga& x, const SubtorusBasis& h) {
    require_valid(x);
    if (h.torus_rank() != x.torus_rank)
        throw std::invalid_argument("fixed_locus: subtorus lives in a torus of the wrong rank");

    std::vector<GradedVariable> ring;
    std::vector<std::size_t> new_index(x.nvars(), 0);
    std::vector<bool> keep(x.nvars(), false);
    for (std::size_t i = 0; i < x.nvars(); ++i) {
        if (h.fixes(x.ring_vars[i].weight)) {
            keep[i] = true;
            new_index[i] = ring.size();
            ring.push_back(x.ring_vars[i]);
        }
    }
    const std::size_t m = ring.size();
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < x.nvars(); ++i)
        images.push_back(keep[i] ? Polynomial::variable(m, new_index[i]) : Polynomial(m));

    GradedCdga out(x.torus_rank, std::move(ring));
    std::set<std::string> fixed_gens1;
    for (const auto& g : x.gens1) {
        if (!h.fixes(g.var.weight))
            continue;
        fixed_gens1.insert(g.var.name);
        out.gens1.push_back({g.var, g.differential.substitute(images, m)});
    }
    for (const auto& y : x.gens2) {
        if (!h.fixes(y.var.weight))
            continue;
        Gen2 ny{y.var, {}};
        for (const auto& [target, coef] : y.differential) {
            if (!fixed_gens1.contains(target))
                continue;
            Polynomial c = coef.substitute(images, m);
            if (!c.is_zero())
                ny.differential.emplace(target, std::move(c));
        }
        out.gens2.push_back(std::move(ny));
    }
    std::vector<Polynomial> excl;
    for (const auto& g : x.excluded.generators())
        excl.push_back(g.substitute(images, m));
    out.excluded = Ideal(m, std::move(excl));
    return out;
}

/// Darboux-shaped presentation of the derived critical locus of a
/// torus-invariant function: one degree-1 generator per partial derivative
/// and one degree-2 generator per torus factor, from the infinitesimal action.
inline GradedCdga from_invariant_function(std::size_t torus_rank, const std::vector<GradedVariable>& vars,
                                          const Polynomial& f) {
    GradedCdga x(torus_rank, vars);
    const std::size_t n = vars.size();
    if (f.nvars() != n)
        throw std::invalid_argument("from_invariant_function: polynomial over the wrong ring");
    for (const Term& t : f.terms())
        if (!x.monomial_weight(t.mono).is_zero())
            throw NotInvariant("from_invariant_function: term " +
                               Polynomial::monomial(t.mono, t.coef).to_string(x.ring_names()) +
                               " has nonzero weight " + x.monomial_weight(t.mono).to_string());

    std::set<std::string> taken = x.all_names();
    std::vector<std::string> wnames;
    for (std::size_t i = 0; i < n; ++i) {
        std::string name = fresh_name("w_" + vars[i].name, taken);
        taken.insert(name);
        wnames.push_back(name);
        x.gens1.push_back({{name, 1, -vars[i].weight}, f.derivative(i)});
    }
    for (std::size_t a = 0; a < torus_rank; ++a) {
        std::string name = fresh_name(torus_rank == 1 ? "e" : "e" + std::to_string(a + 1), taken);
        taken.insert(name);
        Gen2 e{{name, 2, Weight::zero(torus_rank)}, {}};
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t wt = vars[i].weight[a];
            if (wt != 0)
                e.differential.emplace(wnames[i],
                                       Polynomial::variable(n, i) * Rational(static_cast<long>(wt)));
        }
        x.gens2.push_back(std::move(e));
    }
    return x;
}

struct TangentRanks {
    std::size_t torus_rank;
    std::size_t ring_dim;
    std::size_t gens1;
    std::size_t gens2;
    std::int64_t vdim;
    friend bool operator==(const TangentRanks&, const TangentRanks&) = default;
};

/// Ranks of the four-term tangent complex [g ⊗ O -> T_V -> W1 -> W2].
inline TangentRanks tangent_complex_ranks(const GradedCdga& x) {
    auto s = [](std::size_t v) { return static_cast<std::int64_t>(v); };
    return {x.torus_rank, x.nvars(), x.gens1.size(), x.gens2.size(),
            s(x.nvars()) - s(x.gens1.size()) + s(x.gens2.size()) - s(x.torus_rank)};
}

} // namespace kirwan
