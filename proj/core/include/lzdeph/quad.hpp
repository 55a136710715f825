#pragma once

#include <cstddef>
#include <functional>

namespace lzdeph {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evals = 0;
    std::size_t intervals = 0;
};

using RealFn = std::function<double(double)>;

/// Non-adaptive Gauss-Kronrod 7-15 rule on [a, b]; error is |K15 - G7|.
QuadResult gauss_kronrod_15(const RealFn& f, double a, double b);

/// Adaptive GK 7-15 with bisection. An interval is accepted once its error
/// estimate is below tol * (its length / (b - a)), or below the round-off floor
/// of its own Kronrod sum. Throws QuadratureError past depth 60.
QuadResult integrate_adaptive(const RealFn& f, double a, double b, double tol);

/// Integral over the whole real line via t = tan(theta) on (-pi/2, pi/2).
/// f must decay at least like t^-2.
QuadResult integrate_real_line(const RealFn& f, double tol);

}  // namespace lzdeph
