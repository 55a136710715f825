#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace lzdeph::cli;

    CLI::App app{"lzdeph: Landau-Zener tunneling under dephasing Lindblad dynamics"};
    app.require_subcommand(1);

    QCurveOptions qopts;
    auto* qcurve = app.add_subcommand("qcurve", "Tabulate the tunneling function Q(x)");
    qcurve->add_option("--xmin", qopts.xmin, "Smallest x")->capture_default_str();
    qcurve->add_option("--xmax", qopts.xmax, "Largest x")->capture_default_str();
    qcurve->add_option("--points,-n", qopts.points, "Number of points")->capture_default_str();
    qcurve->add_option("--out,-o", qopts.out, "Output file")->required();
    qcurve->add_option("--format", qopts.format, "csv | json | svg")->capture_default_str();

    std::string config, out;
    auto* simulate = app.add_subcommand("simulate", "Integrate the master equation for one configuration");
    simulate->add_option("--config,-c", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out,-o", out, "Trajectory CSV")->required();

    unsigned jobs = 1;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter grid and write one CSV row per point");
    sweep->add_option("--config,-c", config, "JSON grid configuration")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out,-o", out, "Sweep CSV")->required();
    sweep->add_option("--jobs,-j", jobs, "Parallel workers")->capture_default_str();

    std::string suite = "all";
    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "Run a structural/dynamical property suite");
    verify->add_option("--suite", suite, "kernel | transport | invariant | contraction | residual | all")
        ->capture_default_str();
    verify->add_option("--seed", seed, "Seed for randomized instances")->capture_default_str();

    double g0 = 1.0, gamma = 0.0, eps = 0.01, hbar = 1.0;
    auto* predict = app.add_subcommand("predict", "Print the analytic tunneling predictions");
    predict->add_option("--g0", g0, "Minimal gap")->capture_default_str();
    predict->add_option("--gamma", gamma, "Dephasing rate")->capture_default_str();
    predict->add_option("--eps", eps, "Adiabatic parameter")->capture_default_str();
    predict->add_option("--hbar", hbar, "Reduced Planck constant")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kValidationError;
    }

    if (*qcurve) return cmd_qcurve(qopts, std::cout, std::cerr);
    if (*simulate) return cmd_simulate(config, out, std::cout, std::cerr);
    if (*sweep) return cmd_sweep(config, out, jobs, std::cout, std::cerr);
    if (*verify) return cmd_verify(suite, seed, std::cout, std::cerr);
    if (*predict) return cmd_predict(g0, gamma, eps, hbar, std::cout, std::cerr);
    return kValidationError;
}
