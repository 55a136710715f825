#pragma once

#include <cstddef>
#include <string_view>

#include "lzdeph/model.hpp"
#include "lzdeph/quad.hpp"

namespace lzdeph {

enum class Method { ode, quadrature_eq10, closed_form_eq6, lz_eq2, asymptotic };

/// Stable tag used in output files.
std::string_view method_tag(Method m);

/// Tunneling probability with provenance and cost diagnostics.
struct TunnelingResult {
    double T = 0.0;
    Method method = Method::ode;
    double tolerance_achieved = 0.0;
    std::size_t evals = 0;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

/// Q(x) = (pi/2) x (2 + sqrt(1+x^2)) / (sqrt(1+x^2) (sqrt(1+x^2) + 1)^2), x >= 0.
double q_closed(double x);

/// Q(x) = x * integral over R of (t^2+1)^-2 (t^2+1+x^2)^-1 dt, to absolute accuracy tol.
double q_quadrature(double x, double tol = 1e-11);

struct Extremum {
    double x;
    double value;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
template <class F>
Extremum golden_section_max(F&& f, double lo, double hi, double tol);

/// Location and height of the maximum of Q (golden section on [0.5, 2], tol 1e-8).
Extremum q_maximum();

/// Unitary Landau-Zener result exp(-pi g0^2 / (2 hbar eps)).
double lz_probability(double g0, double eps, double hbar = 1.0);

/// Leading-order tunneling per unit eps for constant dephasing:
/// hbar / (2 g0^2) * Q(hbar gamma / g0). Throws InvalidArgument for a non-constant profile.
double dephasing_tunneling_slope(const ModelParams& p);

/// eps * dephasing_tunneling_slope(p).
double dephasing_tunneling(const ModelParams& p, double eps);

/// Weak-dephasing form of Q: (3 pi / 8) x.
double asymptotic_weak(double x);
/// Strong-dephasing (Zeno) form of Q: pi / (2 x).
double asymptotic_strong(double x);

enum class Numerator { closed, numeric };

/// tr(P+ dP-^2 P+) at s, either as g0^2 / (4 g^4) or from the spectral projections.
double tunneling_numerator(double s, const ModelParams& p, Numerator how);

/// Finite-interval tunneling per unit eps:
///   2 hbar^2 * integral_{s0}^{s1} gamma(s) tr(P+ dP-^2 P+) / (g^2 + hbar^2 gamma^2) ds.
/// tol is the absolute accuracy of this per-unit-eps value. The window is split
/// at the profile breakpoints.
QuadResult finite_interval_slope(const ModelParams& p, double s0, double s1, double tol,
                                 Numerator how = Numerator::closed);

/// eps * finite_interval_slope, packaged as a TunnelingResult.
TunnelingResult finite_interval_tunneling(const ModelParams& p, double eps, double s0, double s1,
                                          double tol, Numerator how = Numerator::closed);

template <class F>
Extremum golden_section_max(F&& f, double lo, double hi, double tol) {
    const double inv_phi = 0.6180339887498948482;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

}  // namespace lzdeph
