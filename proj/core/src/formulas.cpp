#include "lzdeph/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "lzdeph/error.hpp"

namespace lzdeph {

using std::numbers::pi;

std::string_view method_tag(Method m) {
    switch (m) {
        case Method::ode: return "ode";
        case Method::quadrature_eq10: return "quadrature_eq10";
        case Method::closed_form_eq6: return "closed_form_eq6";
        case Method::lz_eq2: return "lz_eq2";
        case Method::asymptotic: return "asymptotic";
    }
    return "unknown";
}

double q_closed(double x) {
    if (!(x >= 0.0)) throw InvalidArgument("q_closed: x must be >= 0");
    const double r = std::sqrt(1.0 + x * x);
    return 0.5 * pi * x * (2.0 + r) / (r * (r + 1.0) * (r + 1.0));
}

double q_quadrature(double x, double tol) {
    if (!(x >= 0.0)) throw InvalidArgument("q_quadrature: x must be >= 0");
    if (x == 0.0) return 0.0;
    const double x2 = x * x;
    const auto integrand = [x2](double t) {
        const double u = t * t + 1.0;
        return 1.0 / (u * u * (u + x2));
    };
    return x * integrate_real_line(integrand, tol / std::max(x, 1.0)).value;
}

Extremum q_maximum() { return golden_section_max(q_closed, 0.5, 2.0, 1e-8); }

double lz_probability(double g0, double eps, double hbar) {
    if (!(eps > 0.0)) throw InvalidArgument("eps: must be > 0");
    if (!(hbar > 0.0)) throw InvalidArgument("hbar: must be > 0");
    if (!(g0 >= 0.0)) throw InvalidArgument("g0: must be >= 0");
    return std::exp(-pi * g0 * g0 / (2.0 * hbar * eps));
}

double dephasing_tunneling_slope(const ModelParams& p) {
    p.validate();
    const auto gamma = p.gamma.constant_value();
    if (!gamma) throw InvalidArgument("gamma: closed-form tunneling needs a constant rate");
    return p.hbar / (2.0 * p.g0 * p.g0) * q_closed(p.hbar * *gamma / p.g0);
}

double dephasing_tunneling(const ModelParams& p, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("eps: must be > 0");
    return eps * dephasing_tunneling_slope(p);
}

double asymptotic_weak(double x) { return 3.0 * pi / 8.0 * x; }

double asymptotic_strong(double x) {
    if (!(x > 0.0)) throw InvalidArgument("asymptotic_strong: x must be > 0");
    return pi / (2.0 * x);
}

double tunneling_numerator(double s, const ModelParams& p, Numerator how) {
    if (how == Numerator::closed) {
        const double g2 = s * s + p.g0 * p.g0;
        return p.g0 * p.g0 / (4.0 * g2 * g2);
    }
    const SpectralData sd = spectral(s, p);
    const Mat2 pp = sd.p_plus;
    const Mat2 dpm = sd.dp_minus;
    return trace(pp * dpm * dpm * pp).real();
}

QuadResult finite_interval_slope(const ModelParams& p, double s0, double s1, double tol,
                                 Numerator how) {
    p.validate();
    if (!(s0 < s1)) throw InvalidArgument("s0: must be < s1");
    const double hbar = p.hbar;
    const auto integrand = [&](double s) {
        const double gamma = p.gamma.at(s);
        if (gamma == 0.0) return 0.0;
        const double g2 = s * s + p.g0 * p.g0;
        const double hg = hbar * gamma;
        return 2.0 * hbar * hbar * gamma * tunneling_numerator(s, p, how) / (g2 + hg * hg);
    };

    std::vector<double> cuts{s0};
    for (double k : p.gamma.kinks()) {
        if (k > s0 && k < s1) cuts.push_back(k);
    }
    if (s0 < 0.0 && s1 > 0.0) cuts.push_back(0.0);
    cuts.push_back(s1);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    QuadResult total;
    const double width = s1 - s0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double share = tol * (cuts[i + 1] - cuts[i]) / width;
        const QuadResult piece = integrate_adaptive(integrand, cuts[i], cuts[i + 1], share);
        total.value += piece.value;
        total.error_estimate += piece.error_estimate;
        total.evals += piece.evals;
        total.intervals += piece.intervals;
    }
    return total;
}

TunnelingResult finite_interval_tunneling(const ModelParams& p, double eps, double s0, double s1,
                                          double tol, Numerator how) {
    if (!(eps > 0.0)) throw InvalidArgument("eps: must be > 0");
    const QuadResult q = finite_interval_slope(p, s0, s1, tol, how);
    TunnelingResult r;
    r.T = eps * q.value;
    r.method = Method::quadrature_eq10;
    r.tolerance_achieved = eps * q.error_estimate;
    r.evals = q.evals;
    return r;
}

}  // namespace lzdeph
