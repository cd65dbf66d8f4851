#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace kirwan {

using Exponent = std::uint32_t;

/// Exponent vector over a fixed number of ring variables.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

    static Monomial variable(std::size_t nvars, std::size_t index, Exponent power = 1) {
        Monomial m(nvars);
        m.exps_.at(index) = power;
        return m;
    }

    std::size_t size() const noexcept { return exps_.size(); }
    Exponent operator[](std::size_t i) const { return exps_[i]; }
    Exponent& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<Exponent>& exponents() const noexcept { return exps_; }

    std::uint64_t degree() const noexcept {
        return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
    }

    bool is_one() const noexcept {
        return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
    }

    bool divides(const Monomial& other) const noexcept {
        assert(size() == other.size());
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i])
                return false;
        return true;
    }

    bool coprime(const Monomial& other) const noexcept {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] != 0 && other.exps_[i] != 0)
                return false;
        return true;
    }

    Monomial lcm(const Monomial& other) const {
        Monomial r(size());
        for (std::size_t i = 0; i < exps_.size(); ++i)
            r.exps_[i] = std::max(exps_[i], other.exps_[i]);
        return r;
    }

    /// this / other; requires other | this.
    Monomial quotient(const Monomial& other) const {
        if (!other.divides(*this))
            throw std::domain_error("monomial quotient: not divisible");
        Monomial r(size());
        for (std::size_t i = 0; i < exps_.size(); ++i)
            r.exps_[i] = exps_[i] - other.exps_[i];
        return r;
    }

    Monomial operator*(const Monomial& other) const {
        assert(size() == other.size());
        Monomial r(size());
        for (std::size_t i = 0; i < exps_.size(); ++i)
            r.exps_[i] = exps_[i] + other.exps_[i];
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    // Plain lexicographic comparison of exponent vectors; the canonical storage order.
    friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.exps_ <=> b.exps_; }

private:
    std::vector<Exponent> exps_;
};

enum class OrderKind { Lex, GRevLex, Block };

/// A monomial order over a permutation of the variables. `precedence[0]` is the
/// largest variable. A Block order compares the first `block` variables of the
/// precedence by grevlex and breaks ties by grevlex on the rest; it eliminates
/// the first block.
class MonomialOrder {
public:
    MonomialOrder() = default;

    MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence, std::size_t block = 0)
        : kind_(kind), precedence_(std::move(precedence)), block_(block) {
        std::vector<std::size_t> check = precedence_;
        std::sort(check.begin(), check.end());
        for (std::size_t i = 0; i < check.size(); ++i)
            if (check[i] != i)
                throw std::invalid_argument("monomial order: precedence is not a permutation");
        if (block_ > precedence_.size())
            throw std::invalid_argument("monomial order: block larger than variable count");
    }

    static MonomialOrder lex(std::size_t nvars) { return {OrderKind::Lex, identity(nvars)}; }
    static MonomialOrder grevlex(std::size_t nvars) { return {OrderKind::GRevLex, identity(nvars)}; }

    static MonomialOrder of_kind(OrderKind kind, std::size_t nvars) { return {kind, identity(nvars)}; }

    /// Elimination order for `vars`: those variables form the first block.
    static MonomialOrder eliminating(std::size_t nvars, const std::vector<std::size_t>& vars) {
        std::vector<std::size_t> prec;
        std::vector<bool> taken(nvars, false);
        for (std::size_t v : vars) {
            if (v >= nvars || taken[v])
                throw std::invalid_argument("elimination order: bad variable list");
            taken[v] = true;
            prec.push_back(v);
        }
        for (std::size_t i = 0; i < nvars; ++i)
            if (!taken[i])
                prec.push_back(i);
        return {OrderKind::Block, std::move(prec), vars.size()};
    }

    OrderKind kind() const noexcept { return kind_; }
    const std::vector<std::size_t>& precedence() const noexcept { return precedence_; }
    std::size_t block() const noexcept { return block_; }
    std::size_t nvars() const noexcept { return precedence_.size(); }

    /// Three-way comparison: negative if a < b.
    int compare(const Monomial& a, const Monomial& b) const {
        assert(a.size() == precedence_.size() && b.size() == precedence_.size());
        switch (kind_) {
        case OrderKind::Lex:
            for (std::size_t v : precedence_)
                if (a[v] != b[v])
                    return a[v] < b[v] ? -1 : 1;
            return 0;
        case OrderKind::GRevLex:
            return grevlex_range(a, b, 0, precedence_.size());
        case OrderKind::Block:
            if (int c = grevlex_range(a, b, 0, block_); c != 0)
                return c;
            return grevlex_range(a, b, block_, precedence_.size());
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    static std::vector<std::size_t> identity(std::size_t n) {
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), std::size_t{0});
        return p;
    }

    int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) const {
        std::uint64_t da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a[precedence_[i]];
            db += b[precedence_[i]];
        }
        if (da != db)
            return da < db ? -1 : 1;
        for (std::size_t i = hi; i-- > lo;) {
            std::size_t v = precedence_[i];
            if (a[v] != b[v])
                return a[v] > b[v] ? -1 : 1;
        }
        return 0;
    }

    OrderKind kind_ = OrderKind::GRevLex;
    std::vector<std::size_t> precedence_;
    std::size_t block_ = 0;
};

} // namespace kirwan
