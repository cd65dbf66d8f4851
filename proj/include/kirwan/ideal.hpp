#pragma once

#include <cstddef>
#include <list>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "kirwan/errors.hpp"
#include "kirwan/groebner.hpp"
#include "kirwan/polynomial.hpp"

namespace kirwan {

/// Ideal of a polynomial ring, given by generators. Gröbner bases are computed
/// on demand and cached per monomial order; copies share the cache.
class Ideal {
public:
    Ideal() : cache_(std::make_shared<Cache>()) {}
    explicit Ideal(std::size_t nvars) : nvars_(nvars), cache_(std::make_shared<Cache>()) {}

    Ideal(std::size_t nvars, std::vector<Polynomial> gens)
        : nvars_(nvars), cache_(std::make_shared<Cache>()) {
        for (Polynomial& g : gens) {
            if (g.nvars() != nvars_)
                throw std::invalid_argument("ideal: generator arity mismatch");
            if (!g.is_zero())
                gens_.push_back(std::move(g));
        }
    }

    static Ideal zero(std::size_t nvars) { return Ideal(nvars); }
    static Ideal unit(std::size_t nvars) { return Ideal(nvars, {Polynomial::constant(nvars, 1)}); }

    /// The ideal generated by the given variables.
    static Ideal of_variables(std::size_t nvars, std::span<const std::size_t> vars) {
        std::vector<Polynomial> gens;
        for (std::size_t v : vars)
            gens.push_back(Polynomial::variable(nvars, v));
        return Ideal(nvars, std::move(gens));
    }

    std::size_t nvars() const noexcept { return nvars_; }
    const std::vector<Polynomial>& generators() const noexcept { return gens_; }

    std::vector<Polynomial> basis(const MonomialOrder& order) const {
        std::lock_guard lock(cache_->mutex);
        for (const auto& [o, b] : cache_->entries)
            if (o == order)
                return b;
        cache_->entries.emplace_back(order, groebner_basis(gens_, order));
        return cache_->entries.back().second;
    }

    std::vector<Polynomial> basis() const { return basis(MonomialOrder::grevlex(nvars_)); }

    bool is_zero() const { return gens_.empty(); }

    bool is_unit() const {
        auto b = basis();
        return b.size() == 1 && b.front().is_constant();
    }

    bool is_proper() const { return !is_unit(); }

    bool contains(const Polynomial& f) const {
        if (f.nvars() != nvars_)
            throw std::invalid_argument("ideal membership: arity mismatch");
        if (f.is_zero())
            return true;
        auto order = MonomialOrder::grevlex(nvars_);
        return normal_form(f, basis(order), order).is_zero();
    }

    bool contains(const Ideal& other) const {
        for (const Polynomial& g : other.generators())
            if (!contains(g))
                return false;
        return true;
    }

private:
    struct Cache {
        std::mutex mutex;
        std::list<std::pair<MonomialOrder, std::vector<Polynomial>>> entries;
    };

    std::size_t nvars_ = 0;
    std::vector<Polynomial> gens_;
    std::shared_ptr<Cache> cache_;
};

inline bool ideal_membership(const Polynomial& f, const Ideal& ideal) { return ideal.contains(f); }

/// Mutual containment.
inline bool ideal_equal(const Ideal& a, const Ideal& b) {
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("ideal_equal: arity mismatch");
    return a.contains(b) && b.contains(a);
}

namespace detail {

inline Polynomial add_variables(const Polynomial& p, std::size_t extra) {
    std::vector<std::size_t> id(p.nvars());
    std::iota(id.begin(), id.end(), std::size_t{0});
    return p.relabel(id, p.nvars() + extra);
}

// Drops trailing variables that do not occur in p.
inline Polynomial drop_trailing(const Polynomial& p, std::size_t count) {
    const std::size_t n = p.nvars() - count;
    std::vector<Term> terms;
    for (const Term& t : p.terms()) {
        for (std::size_t i = n; i < p.nvars(); ++i)
            if (t.mono[i] != 0)
                throw std::logic_error("drop_trailing: variable still present");
        terms.push_back({Monomial(std::vector<Exponent>(t.mono.exponents().begin(),
                                                        t.mono.exponents().begin() + static_cast<std::ptrdiff_t>(n))),
                         t.coef});
    }
    return Polynomial(n, std::move(terms));
}

} // namespace detail

/// I ∩ Q[remaining variables], kept in the ambient ring.
inline Ideal eliminate(const Ideal& ideal, std::span<const std::size_t> vars) {
    if (vars.empty())
        return ideal;
    const std::size_t n = ideal.nvars();
    auto order = MonomialOrder::eliminating(n, std::vector<std::size_t>(vars.begin(), vars.end()));
    std::vector<Polynomial> kept;
    for (Polynomial& g : groebner_basis(ideal.generators(), order)) {
        bool uses = false;
        for (std::size_t v : vars)
            uses = uses || g.involves(v);
        if (!uses)
            kept.push_back(std::move(g));
    }
    return Ideal(n, std::move(kept));
}

/// (I : f^∞) via an auxiliary variable s: eliminate s from I + (s·f − 1).
inline Ideal saturate(const Ideal& ideal, const Polynomial& f) {
    if (f.is_zero())
        throw std::invalid_argument("saturate: zero polynomial");
    const std::size_t n = ideal.nvars();
    if (f.is_constant() || ideal.is_zero())
        return ideal;
    std::vector<Polynomial> gens;
    for (const Polynomial& g : ideal.generators())
        gens.push_back(detail::add_variables(g, 1));
    gens.push_back(Polynomial::variable(n + 1, n) * detail::add_variables(f, 1) -
                   Polynomial::constant(n + 1, 1));
    const std::size_t aux[] = {n};
    Ideal elim = eliminate(Ideal(n + 1, std::move(gens)), aux);
    std::vector<Polynomial> out;
    for (const Polynomial& g : elim.generators())
        out.push_back(detail::drop_trailing(g, 1));
    return Ideal(n, std::move(out));
}

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("ideal_sum: arity mismatch");
    std::vector<Polynomial> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    return Ideal(a.nvars(), std::move(gens));
}

inline Ideal ideal_product(const Ideal& a, const Ideal& b) {
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("ideal_product: arity mismatch");
    std::vector<Polynomial> gens;
    for (const Polynomial& f : a.generators())
        for (const Polynomial& g : b.generators())
            gens.push_back(f * g);
    return Ideal(a.nvars(), std::move(gens));
}

/// I ∩ J via t·I + (1 − t)·J, eliminating t.
inline Ideal intersect(const Ideal& a, const Ideal& b) {
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("intersect: arity mismatch");
    const std::size_t n = a.nvars();
    if (a.is_zero() || b.is_zero())
        return Ideal::zero(n);
    Polynomial t = Polynomial::variable(n + 1, n);
    Polynomial one_minus_t = Polynomial::constant(n + 1, 1) - t;
    std::vector<Polynomial> gens;
    for (const Polynomial& g : a.generators())
        gens.push_back(t * detail::add_variables(g, 1));
    for (const Polynomial& g : b.generators())
        gens.push_back(one_minus_t * detail::add_variables(g, 1));
    const std::size_t aux[] = {n};
    Ideal elim = eliminate(Ideal(n + 1, std::move(gens)), aux);
    std::vector<Polynomial> out;
    for (const Polynomial& g : elim.generators())
        out.push_back(detail::drop_trailing(g, 1));
    return Ideal(n, std::move(out));
}

/// The reduced grevlex basis as a fresh ideal; a canonical generating set.
inline Ideal canonical(const Ideal& ideal) { return Ideal(ideal.nvars(), ideal.basis()); }

/// q with f = q·g, for g a monic monomial.
inline Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
    if (g.size() != 1 || g.terms().front().coef != 1)
        throw std::invalid_argument("exact_divide: divisor must be a monic monomial");
    const Monomial& m = g.terms().front().mono;
    std::vector<Term> out;
    out.reserve(f.size());
    for (const Term& t : f.terms()) {
        if (!m.divides(t.mono))
            throw NotDivisible("exact_divide: polynomial is not divisible by the given monomial");
        out.push_back({t.mono.quotient(m), t.coef});
    }
    return Polynomial(f.nvars(), std::move(out));
}

} // namespace kirwan
