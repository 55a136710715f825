// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "lzdeph/error.hpp"
#include "lzdeph/experiments.hpp"
#include "lzdeph/formulas.hpp"
#include "lzdeph/quad.hpp"
#include "lzdeph/verify.hpp"

using namespace lzdeph;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s  %2d  %-34s %s  [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

ModelParams model(double gamma, double g0 = 1.0) {
    ModelParams p;
    p.g0 = g0;
    p.gamma = GammaProfile::constant(gamma);
    return p;
}

RunSpec run(const ModelParams& p, double eps, double half_window) {
    RunSpec spec;
    spec.p = p;
    spec.eps = eps;
    spec.s0 = -half_window;
    spec.s1 = half_window;
    spec.cfg.rel_tol = 1e-10;
    return spec;
}

// Per-unit-eps tunneling contributed by |s| > S, via s = +-S/u on u in (0, 1].
double tail_slope(const ModelParams& p, double S) {
    const double hg = p.hbar * *p.gamma.constant_value();
    const auto density = [&](double s) {
        const double g2 = s * s + p.g0 * p.g0;
        return 2.0 * p.hbar * hg * tunneling_numerator(s, p, Numerator::closed) / (g2 + hg * hg);
    };
    const auto mapped = [&](double u) {
        if (u == 0.0) return 0.0;
        const double s = S / u;
        return (density(s) + density(-s)) * S / (u * u);
    };
    return integrate_adaptive(mapped, 0.0, 1.0, 1e-13).value;
}

// Criterion 5 runs, shared with criterion 10.
std::vector<TunnelingRun> slope_runs;
const double kSlopeEps[] = {0.04, 0.02, 0.01};

}  // namespace

int main() {
    std::printf("lzdeph acceptance suite\n");

    criterion(1, "Q closed form vs quadrature", [] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double x = std::pow(10.0, -3.0 + 5.0 * i / 49.0);
            worst = std::max(worst, std::abs(q_closed(x) - q_quadrature(x, 1e-11)));
        }
        return Outcome{worst <= 1e-9, fmt("max |diff| = %.3e over 50 x (limit 1e-9)", worst)};
    });

    criterion(2, "Q maximum location", [] {
        const Extremum m = q_maximum();
        return Outcome{std::abs(m.x - 1.13693) <= 1e-4, fmt("x* = %.8f, Q(x*) = %.8f (target 1.13693 +- 1e-4)", m.x,
                                                             m.value)};
    });

    criterion(3, "Q weak/strong asymptotics", [] {
        const double weak = std::abs(q_closed(0.01) / asymptotic_weak(0.01) - 1.0);
        const double strong = std::abs(q_closed(100.0) / asymptotic_strong(100.0) - 1.0);
        return Outcome{weak <= 1e-3 && strong <= 1e-3,
                       fmt("rel dev x=0.01: %.3e, x=100: %.3e (limit 1e-3)", weak, strong)};
    });

    criterion(4, "Landau-Zener limit (gamma = 0)", [] {
        double worst = 0.0;
        std::string detail;
        for (double eps : {1.0, std::numbers::pi / 2}) {
            const double T = measure_tunneling(run(model(0.0), eps, 60.0)).T;
            const double lz = lz_probability(1.0, eps);
            const double dev = std::abs(T / lz - 1.0);
            worst = std::max(worst, dev);
            detail += fmt("eps=%.4f: T=%.6f LZ=%.6f rel %.2e; ", eps, T, lz, dev);
        }
        return Outcome{worst <= 0.02, detail + "(limit 2%)"};
    });

    criterion(5, "Dephasing slope extrapolation", [] {
        const ModelParams p = model(1.0);
        std::vector<std::pair<double, double>> pts;
        for (double eps : kSlopeEps) {
            slope_runs.push_back(run_tunneling(run(p, eps, 20.0)));
            pts.emplace_back(eps, slope_runs.back().result.T);
        }
        const SlopeFit fit = slope_extrapolate(pts);
        const double windowed = finite_interval_slope(p, -20.0, 20.0, 1e-12).value;
        const double tail = tail_slope(p, 20.0);
        const double full = 0.5 * q_closed(1.0);
        const double dev_window = std::abs(fit.slope / windowed - 1.0);
        const double dev_full = std::abs((fit.slope + tail) / full - 1.0);
        return Outcome{dev_window <= 0.03 && dev_full <= 0.05,
                       fmt("slope %.7f vs windowed %.7f (rel %.2e, limit 3%%); ", fit.slope, windowed, dev_window) +
                           fmt("slope + tail %.3e = %.7f vs Q(1)/2 = %.7f (rel %.2e, limit 5%%)", tail,
                               fit.slope + tail, full, dev_full)};
    });

    criterion(6, "Regime sweep x = 0.1, 1, 10", [] {
        double worst = 0.0;
        std::string detail;
        for (double gamma : {0.1, 1.0, 10.0}) {
            const ModelParams p = model(gamma);
            const double eps = 0.01;
            const double ode = measure_tunneling(run(p, eps, 20.0)).T / eps;
            const double ref = finite_interval_slope(p, -20.0, 20.0, 1e-12).value;
            const double dev = std::abs(ode / ref - 1.0);
            worst = std::max(worst, dev);
            detail += fmt("x=%g: %.6f vs %.6f (rel %.2e); ", gamma, ode, ref, dev);
        }
        return Outcome{worst <= 0.05, detail + "(limit 5%)"};
    });

    criterion(7, "Adiabatic invariant identity", [] {
        const InvariantReport r = verify_invariant_identity(run(model(1.0), 0.02, 10.0), Branch::plus);
        return Outcome{r.residual <= 1e-6, fmt("|LHS - RHS| = %.3e, LHS = %.6e (limit 1e-6)", r.residual, r.lhs)};
    });

    criterion(8, "Adiabatic residual scaling", [] {
        const double r1 = adiabatic_residual(run(model(1.0), 0.01, 10.0));
        const double r2 = adiabatic_residual(run(model(1.0), 0.005, 10.0));
        const double ratio = r1 / r2;
        return Outcome{ratio >= 1.6 && ratio <= 2.4,
                       fmt("residual %.4e / %.4e = %.4f (range [1.6, 2.4])", r1, r2, ratio)};
    });

    criterion(9, "Structural property suite", [] {
        int checks = 0, failed = 0;
        std::size_t instances = 0;
        std::string failing;
        for (const char* suite : {"kernel", "transport"}) {
            for (const PropertyCheck& c : run_suite(suite, 20240611, 1000)) {
                ++checks;
                instances = std::max(instances, c.instances);
                if (!c.pass) {
                    ++failed;
                    failing += " " + c.name;
                }
            }
        }
        return Outcome{failed == 0 && instances >= 1000,
                       fmt("%.0f properties x %.0f instances, %.0f failures", checks, double(instances), failed) +
                           failing};
    });

    criterion(10, "Irreversibility of tr(rho P+)", [] {
        if (slope_runs.empty()) return Outcome{false, "criterion 5 runs unavailable"};
        const ModelParams p = model(1.0);
        double worst_drop = 0.0;
        bool ok = true;
        for (const TunnelingRun& r : slope_runs) {
            const std::vector<double> pop = upper_population(r.traj, p);
            ok = ok && is_nondecreasing(pop, 1e-9);
            for (std::size_t i = 1; i < pop.size(); ++i) worst_drop = std::max(worst_drop, pop[i - 1] - pop[i]);
        }
        return Outcome{ok, fmt("largest decrease %.3e over %.0f trajectories (slack 1e-9)", worst_drop,
                               double(slope_runs.size()))};
    });

    std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
