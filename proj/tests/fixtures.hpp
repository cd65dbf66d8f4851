#pragma once

// Hand-built presentations shared by the unit tests and the acceptance binary.

#include <string>
#include <vector>

#include "kirwan/cdga.hpp"
#include "test_util.hpp"

namespace kirwan::test {

inline GradedVariable var0(std::string name, Weight w) { return {std::move(name), 0, std::move(w)}; }

/// Ring x(1), y(-1) with no generators.
inline GradedCdga a2_hyperbolic() { return GradedCdga(1, {var0("x", {1}), var0("y", {-1})}); }

/// Ring x(1), y(-1), one weight-zero generator with d = xy.
inline GradedCdga xy_scene() {
    GradedCdga x = a2_hyperbolic();
    x.gens1.push_back({{"w", 1, {0}}, poly({"x", "y"}, "x*y")});
    return x;
}

/// Ring x(1), y(-1), gens1 with d = x^2*y (weight 1) and d = x*y^2 (weight -1).
inline GradedCdga xy2_x2y() {
    GradedCdga x = a2_hyperbolic();
    x.gens1.push_back({{"w1", 1, {1}}, poly({"x", "y"}, "x^2*y")});
    x.gens1.push_back({{"w2", 1, {-1}}, poly({"x", "y"}, "x*y^2")});
    return x;
}

/// Derived critical locus of x^2*y^2 on the hyperbolic plane.
inline GradedCdga darboux_x2y2() {
    return from_invariant_function(1, {var0("x", {1}), var0("y", {-1})}, poly({"x", "y"}, "x^2*y^2"));
}

/// Ring x(1), y(1): every point is unstable.
inline GradedCdga all_positive() { return GradedCdga(1, {var0("x", {1}), var0("y", {1})}); }

} // namespace kirwan::test
