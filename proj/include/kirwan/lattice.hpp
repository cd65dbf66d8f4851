#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "kirwan/polynomial.hpp"

namespace kirwan {

using IntVector = std::vector<std::int64_t>;
using RationalMatrix = std::vector<std::vector<Rational>>;

namespace detail {

// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0)
            ++sel;
        if (sel == m.size())
            continue;
        std::swap(m[sel], m[row]);
        Rational inv = 1 / m[row][col];
        for (Rational& v : m[row])
            v *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0)
                continue;
            Rational f = m[r][col];
            for (std::size_t c = 0; c < cols; ++c)
                m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    return pivots;
}

// Clears denominators and divides by the content; the first nonzero entry is positive.
inline IntVector primitive(const std::vector<Rational>& v) {
    mpz_class den = 1;
    for (const Rational& x : v)
        den = lcm(den, mpz_class(x.get_den()));
    std::vector<mpz_class> ints;
    mpz_class g = 0;
    for (const Rational& x : v) {
        mpz_class n = mpz_class(x.get_num()) * (den / x.get_den());
        g = gcd(g, n);
        ints.push_back(n);
    }
    IntVector out;
    if (g == 0)
        return IntVector(v.size(), 0);
    int sign = 1;
    for (const mpz_class& n : ints)
        if (n != 0) {
            sign = n < 0 ? -1 : 1;
            break;
        }
    for (const mpz_class& n : ints) {
        mpz_class q = n / g * sign;
        if (!q.fits_slong_p())
            throw std::overflow_error("lattice vector entry overflows 64 bits");
        out.push_back(q.get_si());
    }
    return out;
}

inline RationalMatrix to_rational(const std::vector<IntVector>& rows) {
    RationalMatrix m;
    for (const IntVector& r : rows) {
        std::vector<Rational> row;
        for (std::int64_t x : r)
            row.emplace_back(static_cast<long>(x));
        m.push_back(std::move(row));
    }
    return m;
}

} // namespace detail

inline std::size_t matrix_rank(RationalMatrix m) {
    if (m.empty())
        return 0;
    return detail::rref(m, m.front().size()).size();
}

inline std::size_t integer_rank(const std::vector<IntVector>& rows) {
    return matrix_rank(detail::to_rational(rows));
}

/// Canonical basis of the rational span of `vectors`: the reduced row echelon
/// form with each row scaled to a primitive integer vector.
inline std::vector<IntVector> canonical_span(const std::vector<IntVector>& vectors, std::size_t dim) {
    RationalMatrix m = detail::to_rational(vectors);
    detail::rref(m, dim);
    std::vector<IntVector> out;
    for (const auto& row : m)
        out.push_back(detail::primitive(row));
    return out;
}

/// Canonical integer basis of {h in Q^dim : <r, h> = 0 for every row r}.
inline std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t dim) {
    RationalMatrix m = detail::to_rational(rows);
    auto pivots = detail::rref(m, dim);
    std::vector<bool> is_pivot(dim, false);
    for (std::size_t p : pivots)
        is_pivot[p] = true;
    std::vector<IntVector> basis;
    for (std::size_t free = 0; free < dim; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(dim, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][free];
        basis.push_back(detail::primitive(v));
    }
    return canonical_span(basis, dim);
}

} // namespace kirwan
