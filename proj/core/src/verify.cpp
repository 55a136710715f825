#include "lzdeph/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "lzdeph/error.hpp"
#include "lzdeph/experiments.hpp"
#include "lzdeph/lindblad.hpp"
#include "lzdeph/model.hpp"

namespace lzdeph {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Instance {
    double s;
    ModelParams p;
    Mat2 rho;  // Hermitian, unit HS norm
    Mat2 b;    // general complex
    double a;
    double c;
};

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Mat2 general() {
        Mat2 m;
        for (auto& x : m.a) x = {uniform(-1, 1), uniform(-1, 1)};
        return m;
    }

    Mat2 hermitian_unit() {
        const Mat2 g = general();
        const Mat2 h = 0.5 * (g + adjoint(g));
        return h / cplx(hs_norm(h));
    }

    Instance draw() {
        Instance in;
        in.s = uniform(-10.0, 10.0);
        in.p.g0 = uniform(0.2, 3.0);
        in.p.gamma = GammaProfile::constant(uniform(0.0, 3.0));
        in.p.hbar = 1.0;
        in.rho = hermitian_unit();
        in.b = general();
        in.a = uniform(-1.0, 1.0);
        in.c = uniform(-1.0, 1.0);
        return in;
    }

private:
    std::mt19937_64 rng_;
};

struct Accumulator {
    std::string suite;
    std::string name;
    double threshold;
    double worst = 0.0;
    std::size_t count = 0;

    void add(double v) {
        worst = std::max(worst, std::isfinite(v) ? v : HUGE_VAL);
        ++count;
    }
    PropertyCheck finish() const { return {suite, name, worst, threshold, count, worst <= threshold}; }
};

double vec_dist(const Vec4& u, const Vec4& v) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += std::norm(u[i] - v[i]);
    return std::sqrt(sum);
}

Vec4 scaled(const Vec4& v, cplx c) {
    Vec4 out = v;
    for (auto& x : out) x *= c;
    return out;
}

std::vector<PropertyCheck> kernel_suite(std::uint64_t seed, std::size_t n) {
    const std::string s = "kernel";
    Accumulator stationary{s, "L(P+) = L(P-) = 0", 1e-13};
    Accumulator span{s, "L(a P- + b P+) = 0", 1e-13};
    Accumulator adj_stationary{s, "L*(P+) = L*(I) = 0", 1e-13};
    Accumulator trace_kill{s, "|tr L(rho)|", 1e-14};
    Accumulator adjointness{s, "<L*(A),rho> = <A,L(rho)>", 1e-12};
    Accumulator dissip{s, "Re tr(rho L(rho)) <= 0 (excess)", 1e-14};
    Accumulator dissip_im{s, "|Im tr(rho L(rho))|", 1e-14};
    Accumulator numer{s, "tr(P+ dP-^2 P+) = g0^2/(4g^4)", 1e-13};
    Accumulator offdiag_dp{s, "dP+ = P- dP+ P+ + P+ dP+ P-", 1e-13};
    Accumulator superop{s, "M vec(rho) = vec(L(rho))", 1e-13};
    Accumulator trace_row{s, "vec(I)^T M = 0", 1e-13};
    Accumulator spectrum{s, "spec(M) = {0, 0, -hg-ig, -hg+ig}", 1e-12};

    Sampler gen(seed);
    for (std::size_t k = 0; k < n; ++k) {
        const Instance in = gen.draw();
        const SpectralData sd = spectral(in.s, in.p);
        const Mat2 pm = sd.p_minus, pp = sd.p_plus, dp = sd.dp_plus;
        const double damping = in.p.hbar * in.p.gamma.at(in.s);

        stationary.add(std::max(hs_norm(apply_L(in.s, pp, in.p)), hs_norm(apply_L(in.s, pm, in.p))));
        span.add(hs_norm(apply_L(in.s, in.a * pm + in.c * pp, in.p)));
        adj_stationary.add(std::max(hs_norm(apply_Ladj(in.s, pp, in.p)),
                                    hs_norm(apply_Ladj(in.s, Mat2::identity(), in.p))));

        const Mat2 lrho = apply_L(in.s, in.rho, in.p);
        trace_kill.add(std::abs(trace(lrho)));
        const Mat2 obs = gen.hermitian_unit();
        adjointness.add(std::abs(hs_inner(apply_Ladj(in.s, obs, in.p), in.rho) - hs_inner(obs, lrho)));
        const cplx d = trace(in.rho * lrho);
        dissip.add(std::max(0.0, d.real()));
        dissip_im.add(std::abs(d.imag()));

        const double g2 = sd.g * sd.g;
        const Mat2 dpm = sd.dp_minus;
        numer.add(std::abs(trace(pp * dpm * dpm * pp).real() - in.p.g0 * in.p.g0 / (4.0 * g2 * g2)));
        offdiag_dp.add(hs_norm(dp - pm * dp * pp - pp * dp * pm));

        const SuperOp4 m = superop_matrix(in.s, in.p);
        superop.add(vec_dist(m.apply(vec(in.rho)), vec(lrho)));
        const Vec4 row = m.apply_left(vec(Mat2::identity()));
        trace_row.add(vec_dist(row, Vec4{}));

        // Eigenvectors of M: the two stationary projections and the two
        // off-diagonal blocks of a generic matrix.
        const Mat2 up = pp * in.b * pm;
        const Mat2 down = pm * in.b * pp;
        const cplx lam_up = -damping - kI * sd.g;
        const cplx lam_down = -damping + kI * sd.g;
        const double residual = std::max(
            {vec_dist(m.apply(vec(pm)), Vec4{}), vec_dist(m.apply(vec(pp)), Vec4{}),
             vec_dist(m.apply(vec(up)), scaled(vec(up), lam_up)) / std::max(hs_norm(up), 1e-300),
             vec_dist(m.apply(vec(down)), scaled(vec(down), lam_down)) /
                 std::max(hs_norm(down), 1e-300)});
        spectrum.add(residual);
    }
    return {stationary.finish(), span.finish(),     adj_stationary.finish(), trace_kill.finish(),
            adjointness.finish(), dissip.finish(),  dissip_im.finish(),      numer.finish(),
            offdiag_dp.finish(),  superop.finish(), trace_row.finish(),      spectrum.finish()};
}

std::vector<PropertyCheck> transport_suite(std::uint64_t seed, std::size_t n) {
    const std::string s = "transport";
    Accumulator adj{s, "||L*(X+) - dP+||", 1e-12};
    Accumulator fwd{s, "||L(X-) - dP-||", 1e-12};
    Accumulator offdiag{s, "||P+ X P+|| + ||P- X P-||", 1e-13};
    Accumulator eigen{s, "L*(P_k B P_j) = i(e_k-e_j+i hg) P_k B P_j", 1e-12};

    Sampler gen(seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t k = 0; k < n; ++k) {
        const Instance in = gen.draw();
        const SpectralData sd = spectral(in.s, in.p);
        const Mat2 pm = sd.p_minus, pp = sd.p_plus;
        const double damping = in.p.hbar * in.p.gamma.at(in.s);

        const Mat2 xp = transport_X(in.s, in.p, Branch::plus);
        const Mat2 xm = transport_X(in.s, in.p, Branch::minus);
        adj.add(hs_norm(apply_Ladj(in.s, xp, in.p) - Mat2(sd.dp_plus)));
        fwd.add(hs_norm(apply_L(in.s, xm, in.p) - Mat2(sd.dp_minus)));
        offdiag.add(std::max(hs_norm(pp * xp * pp) + hs_norm(pm * xp * pm),
                             hs_norm(pp * xm * pp) + hs_norm(pm * xm * pm)));

        const Mat2 up = pp * in.b * pm;
        const Mat2 down = pm * in.b * pp;
        const cplx f_up = kI * (sd.e_plus - sd.e_minus + kI * damping);
        const cplx f_down = kI * (sd.e_minus - sd.e_plus + kI * damping);
        eigen.add(std::max(hs_norm(apply_Ladj(in.s, up, in.p) - f_up * up),
                           hs_norm(apply_Ladj(in.s, down, in.p) - f_down * down)));
    }

    // X(s) = O(s^-3): ||X(20)|| / ||X(10)|| close to 1/8.
    Accumulator decay{s, "| ||X(20)||/||X(10)|| * 8 - 1 |", 0.25};
    ModelParams p;
    p.g0 = 1.0;
    p.gamma = GammaProfile::constant(1.0);
    decay.add(std::abs(8.0 * hs_norm(transport_X(20.0, p, Branch::plus)) /
                           hs_norm(transport_X(10.0, p, Branch::plus)) -
                       1.0));
    return {adj.finish(), fwd.finish(), offdiag.finish(), eigen.finish(), decay.finish()};
}

RunSpec reference_run(double gamma, double eps, double half_window) {
    RunSpec spec;
    spec.p.g0 = 1.0;
    spec.p.gamma = GammaProfile::constant(gamma);
    spec.eps = eps;
    spec.s0 = -half_window;
    spec.s1 = half_window;
    return spec;
}

std::vector<PropertyCheck> invariant_suite() {
    const std::string s = "invariant";
    std::vector<PropertyCheck> out;
    for (double gamma : {1.0, 0.0}) {
        const RunSpec spec = reference_run(gamma, 0.02, 10.0);
        const DensityTrajectory traj = evolve_rho(spec);
        const InvariantReport plus = invariant_identity(spec, traj, Branch::plus);
        const InvariantReport minus = invariant_identity(spec, traj, Branch::minus);
        const std::string tag = gamma == 0.0 ? " (gamma=0)" : " (gamma=1)";
        Accumulator res{s, "|LHS - RHS| for A=P+" + tag, 1e-6 * std::max(std::abs(plus.lhs), spec.eps)};
        res.add(plus.residual);
        Accumulator anti{s, "|LHS(P+) + LHS(P-)|" + tag, 1e-10};
        anti.add(std::abs(plus.lhs + minus.lhs));
        out.push_back(res.finish());
        out.push_back(anti.finish());
    }
    return out;
}

std::vector<PropertyCheck> contraction_suite() {
    const std::string s = "contraction";
    std::vector<PropertyCheck> out;

    RunSpec damped = reference_run(1.0, 0.02, 10.0);
    const Mat2 sx = Mat2::sigma_x() / cplx(std::sqrt(2.0));
    const ContractionReport r1 = contraction_check(damped, sx);
    Accumulator mono{s, "||rho||_HS nonincreasing, gamma=1 (max increase)", 1e-9};
    mono.add(r1.max_increase);
    out.push_back(mono.finish());
    const double drop = r1.final_norm - r1.initial_norm;
    out.push_back({s, "||rho||_HS strictly decreases across s=0 (final - initial)", drop, 0.0, 1,
                   drop < 0.0});

    // Isometry is limited by integrator drift, which scales with rel_tol.
    RunSpec unitary = reference_run(0.0, 0.02, 10.0);
    unitary.cfg.rel_tol = 1e-12;
    unitary.cfg.abs_tol = 1e-14;
    const ContractionReport r2 = contraction_check(unitary, sx);
    Accumulator iso{s, "||rho||_HS constant, gamma=0", 1e-9};
    for (double v : r2.norms) iso.add(std::abs(v - r2.initial_norm));
    out.push_back(iso.finish());

    const Mat2 ground = spectral(damped.s0, damped.p).p_minus;
    const ContractionReport r3 = contraction_check(damped, ground);
    Accumulator bound{s, "||rho||_HS <= 1 from P-(s0) (excess)", 1e-9};
    for (double v : r3.norms) bound.add(std::max(0.0, v - 1.0));
    out.push_back(bound.finish());
    return out;
}

std::vector<PropertyCheck> residual_suite() {
    const std::string s = "residual";
    const double r_coarse = adiabatic_residual(reference_run(1.0, 0.01, 10.0));
    const double r_fine = adiabatic_residual(reference_run(1.0, 0.005, 10.0));
    const double ratio = r_coarse / r_fine;
    PropertyCheck scaling{s, "residual(0.01)/residual(0.005) in [1.6, 2.4]", ratio, 2.4, 1,
                          ratio >= 1.6 && ratio <= 2.4};
    Accumulator bounded{s, "max ||rho - P-|| at gamma=0, eps=0.01", 0.05};
    bounded.add(adiabatic_residual(reference_run(0.0, 0.01, 10.0)));
    return {scaling, bounded.finish()};
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"kernel",      "transport", "invariant",
                                                "contraction", "residual",  "all"};
    return names;
}

std::vector<PropertyCheck> run_suite(std::string_view suite, std::uint64_t seed, std::size_t instances) {
    std::vector<PropertyCheck> out;
    const auto append = [&out](std::vector<PropertyCheck> v) {
        out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    };
    const bool all = suite == "all";
    bool known = all;
    if (all || suite == "kernel") {
        append(kernel_suite(seed, instances));
        known = true;
    }
    if (all || suite == "transport") {
        append(transport_suite(seed, instances));
        known = true;
    }
    if (all || suite == "invariant") {
        append(invariant_suite());
        known = true;
    }
    if (all || suite == "contraction") {
        append(contraction_suite());
        known = true;
    }
    if (all || suite == "residual") {
        append(residual_suite());
        known = true;
    }
    if (!known) throw InvalidArgument("suite: unknown name '" + std::string(suite) + "'");
    return out;
}

}  // namespace lzdeph
