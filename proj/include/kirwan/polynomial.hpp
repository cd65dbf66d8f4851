#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kirwan/errors.hpp"
#include "kirwan/monomial.hpp"

namespace kirwan {

/// Exact rational numbers. GMP keeps every value in lowest terms with a
/// positive denominator.
using Rational = mpq_class;

struct Term {
    Monomial mono;
    Rational coef;

    friend bool operator==(const Term& a, const Term& b) {
        return a.mono == b.mono && a.coef == b.coef;
    }
};

/// Sparse multivariate polynomial over the rationals in a fixed number of
/// variables. Terms are stored with nonzero coefficients, strictly descending
/// in plain lexicographic order of the exponent vectors, so structural
/// equality is mathematical equality.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    /// Builds from arbitrary terms; merges duplicates and drops zeros.
    Polynomial(std::size_t nvars, std::vector<Term> terms) : nvars_(nvars), terms_(std::move(terms)) {
        for (const Term& t : terms_)
            if (t.mono.size() != nvars_)
                throw std::invalid_argument("polynomial: term arity mismatch");
        normalize();
    }

    static Polynomial constant(std::size_t nvars, const Rational& c) {
        Polynomial p(nvars);
        if (c != 0)
            p.terms_.push_back({Monomial(nvars), c});
        return p;
    }

    static Polynomial variable(std::size_t nvars, std::size_t index) {
        Polynomial p(nvars);
        p.terms_.push_back({Monomial::variable(nvars, index), Rational(1)});
        return p;
    }

    static Polynomial monomial(const Monomial& m, const Rational& c = 1) {
        Polynomial p(m.size());
        if (c != 0)
            p.terms_.push_back({m, c});
        return p;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool is_constant() const noexcept {
        return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
    }

    Rational constant_term() const {
        if (!terms_.empty() && terms_.back().mono.is_one())
            return terms_.back().coef;
        return 0;
    }

    Rational coefficient(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& key) { return t.mono > key; });
        if (it != terms_.end() && it->mono == m)
            return it->coef;
        return 0;
    }

    std::uint64_t total_degree() const noexcept {
        std::uint64_t d = 0;
        for (const Term& t : terms_)
            d = std::max(d, t.mono.degree());
        return d;
    }

    bool involves(std::size_t var) const {
        for (const Term& t : terms_)
            if (t.mono[var] != 0)
                return true;
        return false;
    }

    const Term& leading_term(const MonomialOrder& order) const {
        if (terms_.empty())
            throw std::domain_error("leading term of the zero polynomial");
        const Term* best = &terms_.front();
        for (const Term& t : terms_)
            if (order.less(best->mono, t.mono))
                best = &t;
        return *best;
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (Term& t : r.terms_)
            t.coef = -t.coef;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = merge(*this, o, 1); }
    Polynomial& operator-=(const Polynomial& o) { return *this = merge(*this, o, -1); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, 1); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, -1); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_arity(a, b);
        std::map<Monomial, Rational> acc;
        for (const Term& s : a.terms_)
            for (const Term& t : b.terms_)
                acc[s.mono * t.mono] += s.coef * t.coef;
        return from_map(a.nvars_, acc);
    }

    friend Polynomial operator*(const Polynomial& a, const Rational& c) {
        if (c == 0)
            return Polynomial(a.nvars_);
        Polynomial r = a;
        for (Term& t : r.terms_)
            t.coef *= c;
        return r;
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    /// Multiply by c * m.
    Polynomial scaled(const Monomial& m, const Rational& c) const {
        Polynomial r(nvars_);
        if (c == 0)
            return r;
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_)
            r.terms_.push_back({t.mono * m, t.coef * c});
        return r; // multiplying by a monomial preserves lex order
    }

    Polynomial pow(unsigned n) const {
        Polynomial r = constant(nvars_, 1);
        Polynomial base = *this;
        while (n != 0) {
            if (n & 1u)
                r *= base;
            n >>= 1u;
            if (n != 0)
                base *= base;
        }
        return r;
    }

    Polynomial derivative(std::size_t var) const {
        Polynomial r(nvars_);
        for (const Term& t : terms_) {
            if (t.mono[var] == 0)
                continue;
            Monomial m = t.mono;
            Rational c = t.coef * Rational(m[var]);
            m[var] -= 1;
            r.terms_.push_back({std::move(m), std::move(c)});
        }
        r.normalize();
        return r;
    }

    /// Ring map: variable i is sent to images[i], all images over `target_nvars`.
    Polynomial substitute(std::span<const Polynomial> images, std::size_t target_nvars) const {
        if (images.size() != nvars_)
            throw std::invalid_argument("substitute: wrong number of images");
        for (const Polynomial& im : images)
            if (im.nvars() != target_nvars)
                throw std::invalid_argument("substitute: image arity mismatch");
        Polynomial r(target_nvars);
        for (const Term& t : terms_) {
            Polynomial prod = constant(target_nvars, t.coef);
            for (std::size_t i = 0; i < nvars_; ++i)
                if (t.mono[i] != 0)
                    prod *= images[i].pow(t.mono[i]);
            r += prod;
        }
        return r;
    }

    /// Relabels variables: variable i becomes variable mapping[i] of a ring with
    /// `target_nvars` variables.
    Polynomial relabel(std::span<const std::size_t> mapping, std::size_t target_nvars) const {
        if (mapping.size() != nvars_)
            throw std::invalid_argument("relabel: wrong mapping size");
        Polynomial r(target_nvars);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) {
            Monomial m(target_nvars);
            for (std::size_t i = 0; i < nvars_; ++i)
                m[mapping[i]] += t.mono[i];
            r.terms_.push_back({std::move(m), t.coef});
        }
        r.normalize();
        return r;
    }

    Rational evaluate(std::span<const Rational> point) const {
        if (point.size() != nvars_)
            throw std::invalid_argument("evaluate: wrong point dimension");
        Rational total = 0;
        for (const Term& t : terms_) {
            Rational v = t.coef;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (Exponent e = 0; e < t.mono[i]; ++e)
                    v *= point[i];
            total += v;
        }
        return total;
    }

    /// Divide by the leading coefficient under `order`.
    Polynomial monic(const MonomialOrder& order) const {
        if (is_zero())
            return *this;
        Rational lc = leading_term(order).coef;
        return *this * Rational(1 / lc);
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// Canonical text: terms descending under `order`, explicit '*' and '^'.
    std::string to_string(std::span<const std::string> names, const MonomialOrder& order) const;
    std::string to_string(std::span<const std::string> names) const {
        return to_string(names, MonomialOrder::grevlex(nvars_));
    }

private:
    static void check_arity(const Polynomial& a, const Polynomial& b) {
        if (a.nvars_ != b.nvars_)
            throw std::invalid_argument("polynomial arity mismatch");
    }

    static Polynomial from_map(std::size_t nvars, const std::map<Monomial, Rational>& acc) {
        Polynomial r(nvars);
        r.terms_.reserve(acc.size());
        for (auto it = acc.rbegin(); it != acc.rend(); ++it)
            if (it->second != 0)
                r.terms_.push_back({it->first, it->second});
        return r;
    }

    static Polynomial merge(const Polynomial& a, const Polynomial& b, int sign) {
        check_arity(a, b);
        Polynomial r(a.nvars_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->mono > j->mono)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->mono > i->mono) {
                r.terms_.push_back({j->mono, sign > 0 ? j->coef : Rational(-j->coef)});
                ++j;
            } else {
                Rational c = sign > 0 ? Rational(i->coef + j->coef) : Rational(i->coef - j->coef);
                if (c != 0)
                    r.terms_.push_back({i->mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return a.mono > b.mono; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (Term& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono)
                out.back().coef += t.coef;
            else
                out.push_back(std::move(t));
        }
        std::erase_if(out, [](const Term& t) { return t.coef == 0; });
        terms_ = std::move(out);
    }

    std::size_t nvars_ = 0;
    std::vector<Term> terms_;
};

inline std::string format_monomial(const Monomial& m, std::span<const std::string> names) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!s.empty())
            s += '*';
        s += names[i];
        if (m[i] > 1)
            s += '^' + std::to_string(m[i]);
    }
    return s;
}

inline std::string Polynomial::to_string(std::span<const std::string> names,
                                         const MonomialOrder& order) const {
    if (names.size() != nvars_)
        throw std::invalid_argument("to_string: wrong number of variable names");
    if (terms_.empty())
        return "0";
    std::vector<const Term*> sorted;
    sorted.reserve(terms_.size());
    for (const Term& t : terms_)
        sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(),
              [&](const Term* a, const Term* b) { return order.less(b->mono, a->mono); });

    std::string out;
    bool first = true;
    for (const Term* t : sorted) {
        Rational mag = abs(t->coef);
        bool negative = t->coef < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        std::string mono = format_monomial(t->mono, names);
        if (mono.empty()) {
            out += mag.get_str();
        } else if (mag == 1) {
            out += mono;
        } else {
            out += mag.get_str() + "*" + mono;
        }
    }
    return out;
}

} // namespace kirwan
