#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lzdeph/formulas.hpp"
#include "lzdeph/lindblad.hpp"
#include "lzdeph/linalg2.hpp"
#include "lzdeph/model.hpp"
#include "lzdeph/odeint.hpp"

namespace lzdeph {

/// One master-equation run: model, adiabatic parameter, slow-time window.
struct RunSpec {
    ModelParams p;
    double eps = 0.01;
    double s0 = -20.0;
    double s1 = 20.0;
    IntegratorConfig cfg;
    std::size_t sample_count = 2001;

    /// Throws InvalidArgument naming the offending field. s1 == s0 is allowed.
    void validate() const;
};

/// Default half-width of the window standing in for the whole real line:
/// 20 * max(g0, hbar * max gamma).
double default_half_window(const ModelParams& p);

/// Retained density-matrix samples of one run.
struct DensityTrajectory {
    std::vector<double> s;
    std::vector<Mat2> rho;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evals = 0;
};

/// Integrates d rho / ds = L_s(rho) / (hbar eps), starting from rho0 or P-(s0).
///
/// Every retained sample is checked to be a density matrix: |tr rho - 1| <= 1e-9,
/// Hermiticity defect <= 1e-9 and smallest eigenvalue >= -1e-8. A violation
/// throws NumericalQualityError. Integrator errors propagate.
DensityTrajectory evolve_rho(const RunSpec& spec, std::optional<Mat2> rho0 = std::nullopt);

/// Same dynamics for an arbitrary operator; no density-matrix checks.
DensityTrajectory evolve_operator(const RunSpec& spec, const Mat2& x0);

/// tr(rho(s) P+(s)) at every retained sample.
std::vector<double> upper_population(const DensityTrajectory& traj, const ModelParams& p);

/// True when values[i+1] >= values[i] - slack for all i.
bool is_nondecreasing(std::span<const double> values, double slack);

/// T = tr(rho(s1) P+(s1)) for rho(s0) = P-(s0).
TunnelingResult measure_tunneling(const RunSpec& spec);

/// measure_tunneling plus the trajectory it was computed from.
struct TunnelingRun {
    TunnelingResult result;
    DensityTrajectory traj;
};
TunnelingRun run_tunneling(const RunSpec& spec);

/// Least-squares fit T = slope * eps + curvature * eps^2.
struct SlopeFit {
    double slope;
    double curvature;
};
/// Needs at least two distinct eps values; throws InvalidArgument otherwise.
SlopeFit slope_extrapolate(std::span<const std::pair<double, double>> points);

/// Both sides of the adiabatic-invariant identity
///   tr(A rho)|_{s0}^{s1} = hbar eps tr(X rho)|_{s0}^{s1} - hbar eps int tr(dX/ds rho) ds.
struct InvariantReport {
    double lhs = 0.0;
    cplx rhs = 0.0;
    cplx boundary_term = 0.0;
    cplx integral_term = 0.0;
    double residual = 0.0;
};

/// A is P+ (Branch::plus) or P- (Branch::minus). dX/ds is a Richardson-refined
/// central difference of the closed-form X; the integral uses Simpson weights on
/// the retained samples.
InvariantReport verify_invariant_identity(const RunSpec& spec, Branch observable);
InvariantReport invariant_identity(const RunSpec& spec, const DensityTrajectory& traj,
                                   Branch observable);

/// Solution X of L*_s(X) = dA/ds for A = P+ or P-.
Mat2 invariant_transport(double s, const ModelParams& p, Branch observable);
/// Richardson-refined central difference of invariant_transport at s.
Mat2 invariant_transport_derivative(double s, const ModelParams& p, Branch observable);

/// max over retained samples of ||rho(s) - P-(s)||_HS.
double adiabatic_residual(const RunSpec& spec);

struct ContractionReport {
    bool monotone = true;
    double max_increase = 0.0;
    double initial_norm = 0.0;
    double final_norm = 0.0;
    std::vector<double> norms;
};

/// Evolves a Hermitian rho0 and checks ||rho(s)||_HS is nonincreasing within 1e-9.
ContractionReport contraction_check(const RunSpec& spec, const Mat2& rho0);

/// Simpson-rule integral of equally spaced samples with spacing h
/// (3/8 rule on the last four points when the count is even).
cplx simpson(std::span<const cplx> f, double h);

}  // namespace lzdeph
