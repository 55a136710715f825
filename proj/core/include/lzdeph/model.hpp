#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "lzdeph/linalg2.hpp"

namespace lzdeph {

/// Dephasing rate as a function of slow time s.
///
/// Either a constant, or a piecewise-linear table that is clamped (not
/// extrapolated) outside its breakpoint range so the rate stays nonnegative.
class GammaProfile {
public:
    struct Breakpoint {
        double s;
        double gamma;
    };

    GammaProfile() = default;

    static GammaProfile constant(double value);
    /// Breakpoints must have strictly increasing s and nonnegative rates.
    static GammaProfile piecewise_linear(std::vector<Breakpoint> points);

    bool is_constant() const { return std::holds_alternative<double>(data_); }
    /// The constant value, if this is a constant profile.
    std::optional<double> constant_value() const;
    /// Breakpoint abscissae (empty for a constant profile).
    std::vector<double> kinks() const;
    const std::vector<Breakpoint>* table() const { return std::get_if<std::vector<Breakpoint>>(&data_); }

    double at(double s) const;

private:
    std::variant<double, std::vector<Breakpoint>> data_{0.0};
};

inline double gamma_at(double s, const GammaProfile& prof) { return prof.at(s); }

/// Two-level avoided-crossing model: minimal gap g0, dephasing rate gamma(s), hbar.
struct ModelParams {
    double g0 = 1.0;
    GammaProfile gamma = GammaProfile::constant(0.0);
    double hbar = 1.0;

    /// Throws InvalidArgument naming the offending field.
    void validate() const;
};

/// Instantaneous spectral data of H(s); derivatives are with respect to s.
struct SpectralData {
    double s;
    double g;
    double e_minus;
    double e_plus;
    HermMat2 p_minus;
    HermMat2 p_plus;
    HermMat2 dp_minus;
    HermMat2 dp_plus;
};

/// H(s) = (s*sz + g0*sx) / 2.
HermMat2 hamiltonian(double s, const ModelParams& p);

/// Instantaneous gap sqrt(s^2 + g0^2).
double gap(double s, const ModelParams& p);

/// Projections from the Bloch vector (g0, 0, s)/g, smooth in s.
SpectralData spectral(double s, const ModelParams& p);

}  // namespace lzdeph
