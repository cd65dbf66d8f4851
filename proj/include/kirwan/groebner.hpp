#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kirwan/polynomial.hpp"

namespace kirwan {

namespace detail {

// Terms sorted strictly descending under a fixed monomial order.
using OrderedTerms = std::vector<Term>;

inline OrderedTerms ordered(const Polynomial& p, const MonomialOrder& order) {
    OrderedTerms t = p.terms();
    std::sort(t.begin(), t.end(),
              [&](const Term& a, const Term& b) { return order.less(b.mono, a.mono); });
    return t;
}

inline Polynomial unordered(std::size_t nvars, OrderedTerms terms) {
    return Polynomial(nvars, std::move(terms));
}

// a - c * m * b, both inputs descending under `order`, starting from a[from].
inline OrderedTerms sub_mul(const OrderedTerms& a, std::size_t from, const Rational& c,
                            const Monomial& m, const OrderedTerms& b, const MonomialOrder& order) {
    OrderedTerms out;
    out.reserve(a.size() - from + b.size());
    std::size_t i = from, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) {
            out.push_back(a[i++]);
            continue;
        }
        Monomial bm = b[j].mono * m;
        if (i == a.size()) {
            out.push_back({std::move(bm), Rational(-c * b[j].coef)});
            ++j;
            continue;
        }
        int cmp = order.compare(a[i].mono, bm);
        if (cmp > 0) {
            out.push_back(a[i++]);
        } else if (cmp < 0) {
            out.push_back({std::move(bm), Rational(-c * b[j].coef)});
            ++j;
        } else {
            Rational v = a[i].coef - c * b[j].coef;
            if (v != 0)
                out.push_back({a[i].mono, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

inline void make_monic(OrderedTerms& t) {
    if (t.empty())
        return;
    Rational inv = 1 / t.front().coef;
    for (Term& term : t)
        term.coef *= inv;
}

// Full reduction of p modulo the (ordered, nonzero) divisors.
inline OrderedTerms reduce_full(OrderedTerms p, const std::vector<OrderedTerms>& divisors,
                                const MonomialOrder& order, std::optional<std::size_t> skip = {}) {
    OrderedTerms rem;
    std::size_t head = 0;
    while (head < p.size()) {
        const Term& lt = p[head];
        bool reduced = false;
        for (std::size_t k = 0; k < divisors.size(); ++k) {
            if (skip && *skip == k)
                continue;
            const OrderedTerms& g = divisors[k];
            if (g.front().mono.divides(lt.mono)) {
                Rational c = lt.coef / g.front().coef;
                Monomial m = lt.mono.quotient(g.front().mono);
                p = sub_mul(p, head, c, m, g, order);
                head = 0;
                reduced = true;
                break;
            }
        }
        if (!reduced)
            rem.push_back(p[head++]);
    }
    return rem;
}

} // namespace detail

/// Remainder of f on division by a Gröbner basis; zero iff f lies in the ideal.
inline Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis,
                              const MonomialOrder& order) {
    std::vector<detail::OrderedTerms> divisors;
    for (const Polynomial& g : basis)
        if (!g.is_zero())
            divisors.push_back(detail::ordered(g, order));
    return detail::unordered(f.nvars(), detail::reduce_full(detail::ordered(f, order), divisors, order));
}

struct DivisionResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
};

/// Ordered multivariate division: f = sum q_i g_i + r, where each term of r is
/// divisible by no leading monomial of the g_i. Divisors are tried in list order.
inline DivisionResult divide(const Polynomial& f, std::span<const Polynomial> divisors,
                             const MonomialOrder& order) {
    const std::size_t n = f.nvars();
    std::vector<detail::OrderedTerms> gs;
    std::vector<std::vector<Term>> qs(divisors.size());
    for (const Polynomial& g : divisors)
        gs.push_back(detail::ordered(g, order));

    detail::OrderedTerms p = detail::ordered(f, order);
    detail::OrderedTerms rem;
    std::size_t head = 0;
    while (head < p.size()) {
        const Term& lt = p[head];
        bool reduced = false;
        for (std::size_t k = 0; k < gs.size(); ++k) {
            if (gs[k].empty() || !gs[k].front().mono.divides(lt.mono))
                continue;
            Rational c = lt.coef / gs[k].front().coef;
            Monomial m = lt.mono.quotient(gs[k].front().mono);
            qs[k].push_back({m, c});
            p = detail::sub_mul(p, head, c, m, gs[k], order);
            head = 0;
            reduced = true;
            break;
        }
        if (!reduced)
            rem.push_back(p[head++]);
    }

    DivisionResult out;
    for (auto& q : qs)
        out.quotients.emplace_back(n, std::move(q));
    out.remainder = detail::unordered(n, std::move(rem));
    return out;
}

/// Reduced, monic Gröbner basis by Buchberger's algorithm with the normal
/// selection strategy, the coprime criterion and the chain criterion. The
/// output is sorted by leading monomial, descending.
inline std::vector<Polynomial> groebner_basis(std::span<const Polynomial> gens,
                                              const MonomialOrder& order) {
    if (gens.empty())
        return {};
    const std::size_t nvars = gens.front().nvars();
    for (const Polynomial& g : gens)
        if (g.nvars() != nvars || order.nvars() != nvars)
            throw std::invalid_argument("groebner_basis: arity mismatch");

    std::vector<detail::OrderedTerms> basis;
    for (const Polynomial& g : gens) {
        if (g.is_zero())
            continue;
        detail::OrderedTerms t = detail::ordered(g, order);
        if (t.front().mono.is_one())
            return {Polynomial::constant(nvars, 1)};
        detail::make_monic(t);
        basis.push_back(std::move(t));
    }
    if (basis.empty())
        return {};

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    std::vector<Pair> pending;
    std::vector<std::vector<char>> in_pending;

    auto lm = [&](std::size_t k) -> const Monomial& { return basis[k].front().mono; };
    auto add_pairs_for = [&](std::size_t j) {
        for (auto& row : in_pending)
            row.resize(basis.size(), 0);
        in_pending.resize(basis.size(), std::vector<char>(basis.size(), 0));
        for (std::size_t i = 0; i < j; ++i) {
            pending.push_back({i, j, lm(i).lcm(lm(j))});
            in_pending[i][j] = in_pending[j][i] = 1;
        }
    };
    for (std::size_t j = 0; j < basis.size(); ++j)
        add_pairs_for(j);

    while (!pending.empty()) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending.size(); ++k) {
            int c = order.compare(pending[k].lcm, pending[best].lcm);
            if (c < 0 || (c == 0 && std::pair(pending[k].j, pending[k].i) <
                                        std::pair(pending[best].j, pending[best].i)))
                best = k;
        }
        Pair pr = std::move(pending[best]);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
        in_pending[pr.i][pr.j] = in_pending[pr.j][pr.i] = 0;

        if (lm(pr.i).coprime(lm(pr.j)))
            continue;
        bool chain = false;
        for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
            if (k == pr.i || k == pr.j)
                continue;
            if (!in_pending[pr.i][k] && !in_pending[pr.j][k] && lm(k).divides(pr.lcm))
                chain = true;
        }
        if (chain)
            continue;

        // basis elements are monic, so the S-polynomial needs no leading-coefficient scaling
        detail::OrderedTerms s = basis[pr.i];
        const Monomial mi = pr.lcm.quotient(lm(pr.i));
        for (Term& t : s)
            t.mono = t.mono * mi;
        s = detail::sub_mul(s, 0, Rational(1), pr.lcm.quotient(lm(pr.j)), basis[pr.j], order);
        detail::OrderedTerms r = detail::reduce_full(std::move(s), basis, order);
        if (r.empty())
            continue;
        if (r.front().mono.is_one())
            return {Polynomial::constant(nvars, 1)};
        detail::make_monic(r);
        basis.push_back(std::move(r));
        add_pairs_for(basis.size() - 1);
    }

    // Minimize: drop elements whose leading monomial is divisible by another's.
    std::vector<detail::OrderedTerms> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j || !lm(j).divides(lm(i)))
                continue;
            redundant = lm(j) != lm(i) || j < i;
        }
        if (!redundant)
            minimal.push_back(basis[i]);
    }
    // Interreduce tails.
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        detail::OrderedTerms head{minimal[i].front()};
        detail::OrderedTerms tail(minimal[i].begin() + 1, minimal[i].end());
        detail::OrderedTerms red = detail::reduce_full(std::move(tail), minimal, order, i);
        head.insert(head.end(), red.begin(), red.end());
        minimal[i] = std::move(head);
    }
    std::sort(minimal.begin(), minimal.end(), [&](const auto& a, const auto& b) {
        return order.less(b.front().mono, a.front().mono);
    });

    std::vector<Polynomial> out;
    out.reserve(minimal.size());
    for (auto& t : minimal)
        out.push_back(detail::unordered(nvars, std::move(t)));
    return out;
}

} // namespace kirwan
