#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lzdeph/experiments.hpp"

namespace lzdeph::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationError = 1,
    kNumericalFailure = 2,
    kVerificationFailure = 3,
};

/// Fixed header of the sweep CSV (also echoed by `simulate`).
inline constexpr const char* kSweepHeader =
    "g0,gamma,eps,s0,s1,T_ode,T_eq10,T_eq6,rel_dev_ode_eq10,status";

/// Run configuration after parsing: one value or a grid per swept key.
///
/// Keys: g0, gamma (number, list of numbers, or [[s, gamma], ...] breakpoints),
/// eps, hbar, s0, s1, S (symmetric window shorthand), rel_tol, abs_tol, samples.
struct Config {
    std::vector<double> g0{1.0};
    std::vector<GammaProfile> gamma{GammaProfile::constant(0.0)};
    std::vector<double> eps{0.01};
    double hbar = 1.0;
    std::optional<double> s0;
    std::optional<double> s1;
    std::optional<double> half_window;
    IntegratorConfig integrator;
    std::size_t samples = 2001;

    /// Grid in deterministic order: g0 outermost, then gamma, then eps.
    std::vector<RunSpec> expand() const;
};

/// Throws InvalidArgument naming the offending key.
Config parse_config(const nlohmann::json& doc);
Config load_config(const std::string& path);

/// One sweep/simulate row.
struct Row {
    RunSpec spec;
    std::optional<TunnelingRun> run;
    double t_eq10 = 0.0;
    std::optional<double> t_eq6;
    std::string status = "ok";
};

Row evaluate(const RunSpec& spec, bool keep_trajectory);
std::string format_row(const Row& row);
/// 17 significant digits, shortest form.
std::string num(double v);

struct QCurveOptions {
    double xmin = 0.0;
    double xmax = 10.0;
    std::size_t points = 201;
    std::string out;
    std::string format = "csv";
};

int cmd_qcurve(const QCurveOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& config_path, const std::string& out_path, std::ostream& out,
                 std::ostream& err);
int cmd_sweep(const std::string& config_path, const std::string& out_path, unsigned jobs,
              std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& out, std::ostream& err);
int cmd_predict(double g0, double gamma, double eps, double hbar, std::ostream& out, std::ostream& err);

}  // namespace lzdeph::cli
