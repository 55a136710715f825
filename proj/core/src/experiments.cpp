#include "lzdeph/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lzdeph/error.hpp"

namespace lzdeph {

namespace {

constexpr double kTraceTol = 1e-9;
constexpr double kHermTol = 1e-9;
constexpr double kPositivityTol = -1e-8;
constexpr double kContractionSlack = 1e-9;

double min_eigenvalue(const Mat2& m) {
    const Mat2 h = 0.5 * (m + adjoint(m));
    const double a0 = 0.5 * (h.a[0].real() + h.a[3].real());
    const double az = 0.5 * (h.a[0].real() - h.a[3].real());
    return a0 - std::hypot(h.a[1].real(), h.a[1].imag(), az);
}

void check_density(double s, const Mat2& rho) {
    const double tr_err = std::abs(trace(rho) - 1.0);
    const double herm = hermiticity_defect(rho);
    const double lmin = min_eigenvalue(rho);
    if (tr_err > kTraceTol || herm > kHermTol || lmin < kPositivityTol) {
        std::ostringstream msg;
        msg << "evolve_rho: state left the density-matrix set at s=" << s
            << " (|tr-1|=" << tr_err << ", hermiticity defect=" << herm
            << ", min eigenvalue=" << lmin << ")";
        throw NumericalQualityError(msg.str());
    }
}

DensityTrajectory evolve(const RunSpec& spec, const Mat2& x0) {
    spec.validate();
    const ModelParams& p = spec.p;
    const double inv_scale = 1.0 / (p.hbar * spec.eps);
    const auto rhs = [&p, inv_scale](double s, const Vec4& y) {
        const SpectralData sd = spectral(s, p);
        Vec4 dy = vec(apply_L(sd, p.hbar * p.gamma.at(s), unvec(y)));
        for (auto& v : dy) v *= inv_scale;
        return dy;
    };
    const Trajectory<4> t = integrate<4>(rhs, vec(x0), spec.s0, spec.s1, spec.cfg, spec.sample_count);

    DensityTrajectory out;
    out.s.reserve(t.samples.size());
    out.rho.reserve(t.samples.size());
    for (const auto& smp : t.samples) {
        out.s.push_back(smp.s);
        out.rho.push_back(unvec(smp.y));
    }
    out.accepted = t.accepted;
    out.rejected = t.rejected;
    out.evals = t.evals;
    return out;
}

}  // namespace

void RunSpec::validate() const {
    p.validate();
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("eps: must be finite and > 0");
    if (!std::isfinite(s0)) throw InvalidArgument("s0: must be finite");
    if (!std::isfinite(s1)) throw InvalidArgument("s1: must be finite");
    if (!(s1 >= s0)) throw InvalidArgument("s1: must be >= s0");
    if (sample_count == 1) throw InvalidArgument("samples: must be 0 or >= 2");
    cfg.validate();
}

double default_half_window(const ModelParams& p) {
    double gmax = 0.0;
    if (const auto c = p.gamma.constant_value()) {
        gmax = *c;
    } else if (const auto* t = p.gamma.table()) {
        for (const auto& bp : *t) gmax = std::max(gmax, bp.gamma);
    }
    return 20.0 * std::max(p.g0, p.hbar * gmax);
}

DensityTrajectory evolve_rho(const RunSpec& spec, std::optional<Mat2> rho0) {
    spec.validate();
    const Mat2 start = rho0 ? *rho0 : Mat2(spectral(spec.s0, spec.p).p_minus);
    check_density(spec.s0, start);
    DensityTrajectory traj = evolve(spec, start);
    for (std::size_t i = 0; i < traj.s.size(); ++i) check_density(traj.s[i], traj.rho[i]);
    return traj;
}

DensityTrajectory evolve_operator(const RunSpec& spec, const Mat2& x0) { return evolve(spec, x0); }

std::vector<double> upper_population(const DensityTrajectory& traj, const ModelParams& p) {
    std::vector<double> out;
    out.reserve(traj.s.size());
    for (std::size_t i = 0; i < traj.s.size(); ++i) {
        const Mat2 pp = spectral(traj.s[i], p).p_plus;
        out.push_back(trace(traj.rho[i] * pp).real());
    }
    return out;
}

bool is_nondecreasing(std::span<const double> values, double slack) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[i - 1] - slack) return false;
    }
    return true;
}

TunnelingRun run_tunneling(const RunSpec& spec) {
    TunnelingRun run;
    run.traj = evolve_rho(spec);
    const Mat2 pp = spectral(spec.s1, spec.p).p_plus;
    run.result.T = trace(run.traj.rho.back() * pp).real();
    run.result.method = Method::ode;
    run.result.tolerance_achieved = spec.cfg.rel_tol;
    run.result.evals = run.traj.evals;
    run.result.accepted_steps = run.traj.accepted;
    run.result.rejected_steps = run.traj.rejected;
    return run;
}

TunnelingResult measure_tunneling(const RunSpec& spec) { return run_tunneling(spec).result; }

SlopeFit slope_extrapolate(std::span<const std::pair<double, double>> points) {
    std::vector<double> distinct;
    for (const auto& [e, t] : points) distinct.push_back(e);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2) {
        throw InvalidArgument("slope_extrapolate: needs at least two distinct eps values");
    }
    // Normal equations for T = a e + b e^2, scaled by the largest eps for conditioning.
    const double scale = distinct.back();
    double s2 = 0, s3 = 0, s4 = 0, t1 = 0, t2 = 0;
    for (const auto& [e, t] : points) {
        const double u = e / scale;
        s2 += u * u;
        s3 += u * u * u;
        s4 += u * u * u * u;
        t1 += u * t;
        t2 += u * u * t;
    }
    const double det = s2 * s4 - s3 * s3;
    const double a = (t1 * s4 - t2 * s3) / det;
    const double b = (s2 * t2 - s3 * t1) / det;
    return {a / scale, b / (scale * scale)};
}

Mat2 invariant_transport(double s, const ModelParams& p, Branch observable) {
    const Mat2 x = transport_X(s, p, Branch::plus);
    return observable == Branch::plus ? x : -x;
}

Mat2 invariant_transport_derivative(double s, const ModelParams& p, Branch observable) {
    const double h = 1e-5 * (1.0 + std::abs(s));
    const auto central = [&](double step) {
        return (invariant_transport(s + step, p, observable) -
                invariant_transport(s - step, p, observable)) /
               cplx(2.0 * step);
    };
    const Mat2 coarse = central(h);
    const Mat2 fine = central(0.5 * h);
    return (4.0 * fine - coarse) / cplx(3.0);
}

cplx simpson(std::span<const cplx> f, double h) {
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * h * (f[0] + f[1]);
    if (n == 4) return 3.0 * h / 8.0 * (f[0] + 3.0 * f[1] + 3.0 * f[2] + f[3]);
    // Simpson on an odd-length prefix, 3/8 rule on the remaining four points if needed.
    const std::size_t m = n % 2 == 1 ? n : n - 3;
    cplx sum = f[0] + f[m - 1];
    for (std::size_t i = 1; i + 1 < m; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
    sum *= h / 3.0;
    if (m != n) {
        sum += 3.0 * h / 8.0 * (f[m - 1] + 3.0 * f[m] + 3.0 * f[m + 1] + f[m + 2]);
    }
    return sum;
}

InvariantReport invariant_identity(const RunSpec& spec, const DensityTrajectory& traj,
                                   Branch observable) {
    const ModelParams& p = spec.p;
    InvariantReport rep;
    const std::size_t n = traj.s.size();
    const auto a_of = [&](double s) {
        const SpectralData sd = spectral(s, p);
        return observable == Branch::plus ? Mat2(sd.p_plus) : Mat2(sd.p_minus);
    };
    rep.lhs = (trace(a_of(traj.s.back()) * traj.rho.back()) -
               trace(a_of(traj.s.front()) * traj.rho.front()))
                  .real();
    if (n < 2) return rep;

    const double scale = p.hbar * spec.eps;
    const cplx x_end = trace(invariant_transport(traj.s.back(), p, observable) * traj.rho.back());
    const cplx x_start = trace(invariant_transport(traj.s.front(), p, observable) * traj.rho.front());
    rep.boundary_term = scale * (x_end - x_start);

    std::vector<cplx> integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
        integrand[i] = trace(invariant_transport_derivative(traj.s[i], p, observable) * traj.rho[i]);
    }
    const double h = (traj.s.back() - traj.s.front()) / double(n - 1);
    rep.integral_term = -scale * simpson(integrand, h);
    rep.rhs = rep.boundary_term + rep.integral_term;
    rep.residual = std::abs(rep.lhs - rep.rhs);
    return rep;
}

InvariantReport verify_invariant_identity(const RunSpec& spec, Branch observable) {
    if (spec.sample_count < 2 && spec.s1 > spec.s0) {
        throw InvalidArgument("samples: invariant identity needs an equally spaced grid (>= 2)");
    }
    return invariant_identity(spec, evolve_rho(spec), observable);
}

double adiabatic_residual(const RunSpec& spec) {
    const DensityTrajectory traj = evolve_rho(spec);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.s.size(); ++i) {
        const Mat2 pm = spectral(traj.s[i], spec.p).p_minus;
        worst = std::max(worst, hs_norm(traj.rho[i] - pm));
    }
    return worst;
}

ContractionReport contraction_check(const RunSpec& spec, const Mat2& rho0) {
    if (hermiticity_defect(rho0) > 1e-12) {
        throw InvalidArgument("rho0: contraction check needs a Hermitian operator");
    }
    const DensityTrajectory traj = evolve_operator(spec, rho0);
    ContractionReport rep;
    rep.norms.reserve(traj.rho.size());
    for (const auto& r : traj.rho) rep.norms.push_back(hs_norm(r));
    for (std::size_t i = 1; i < rep.norms.size(); ++i) {
        rep.max_increase = std::max(rep.max_increase, rep.norms[i] - rep.norms[i - 1]);
    }
    rep.monotone = rep.max_increase <= kContractionSlack;
    rep.initial_norm = rep.norms.front();
    rep.final_norm = rep.norms.back();
    return rep;
}

}  // namespace lzdeph
