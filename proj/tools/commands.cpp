#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "lzdeph/error.hpp"
#include "lzdeph/verify.hpp"

namespace lzdeph::cli {

namespace {

using nlohmann::json;

constexpr double kQuadTol = 1e-12;

std::vector<double> numbers(const json& doc, const char* key) {
    const json& v = doc.at(key);
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
    } else if (v.is_array() && !v.empty()) {
        for (const auto& x : v) {
            if (!x.is_number()) throw InvalidArgument(std::string(key) + ": expected a number or list of numbers");
            out.push_back(x.get<double>());
        }
    } else {
        throw InvalidArgument(std::string(key) + ": expected a number or nonempty list of numbers");
    }
    return out;
}

double number(const json& doc, const char* key) {
    const json& v = doc.at(key);
    if (!v.is_number()) throw InvalidArgument(std::string(key) + ": expected a number");
    return v.get<double>();
}

std::vector<GammaProfile> gammas(const json& v) {
    if (v.is_number()) return {GammaProfile::constant(v.get<double>())};
    if (!v.is_array() || v.empty()) throw InvalidArgument("gamma: expected a number, list, or breakpoint table");
    if (v.front().is_array()) {
        std::vector<GammaProfile::Breakpoint> pts;
        for (const auto& bp : v) {
            if (!bp.is_array() || bp.size() != 2 || !bp[0].is_number() || !bp[1].is_number()) {
                throw InvalidArgument("gamma: breakpoints must be [s, gamma] pairs");
            }
            pts.push_back({bp[0].get<double>(), bp[1].get<double>()});
        }
        return {GammaProfile::piecewise_linear(std::move(pts))};
    }
    std::vector<GammaProfile> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw InvalidArgument("gamma: expected a list of numbers");
        out.push_back(GammaProfile::constant(x.get<double>()));
    }
    return out;
}

std::string gamma_label(const GammaProfile& prof) {
    if (const auto c = prof.constant_value()) return num(*c);
    return "profile";
}

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot open '" << path << "' for writing\n";
        return false;
    }
    f << content;
    f.close();
    if (!f) {
        err << "error: failed writing '" << path << "'\n";
        return false;
    }
    return true;
}

std::string status_of(const std::exception& e) {
    if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid";
    if (dynamic_cast<const QuadratureError*>(&e)) return "quadrature_failure";
    if (dynamic_cast<const NumericalQualityError*>(&e)) return "quality_failure";
    return "integration_failure";
}

double offdiag_norm(const Mat2& rho, const SpectralData& sd) {
    const Mat2 pp = sd.p_plus, pm = sd.p_minus;
    return hs_norm(pp * rho * pm + pm * rho * pp);
}

std::string render_svg(const std::vector<double>& xs, const std::vector<double>& qs, const Extremum& peak) {
    constexpr double W = 800, H = 500, L = 70, R = 30, T = 30, B = 60;
    const double xmin = xs.front(), xmax = xs.back();
    const double qmax_data = *std::max_element(qs.begin(), qs.end());
    const double ymin = 0.0;
    const double ymax = qmax_data > 0.0 ? 1.1 * qmax_data : 1.0;
    const auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    const auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\" width=\"{}\" height=\"{}\">\n", W, H, W, H);
    svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", L, H - B, W - R, H - B);
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", L, T, L, H - B);
    for (int i = 0; i < 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"black\"/>\n", px(xv),
                           H - B, H - B + 6);
        svg += fmt::format(
            "<text x=\"{:.2f}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">{:.4g}</text>\n", px(xv),
            H - B + 24, xv);
        svg += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n", L - 6,
                           py(yv), L);
        svg += fmt::format("<text x=\"{}\" y=\"{:.2f}\" font-size=\"14\" text-anchor=\"end\">{:.3g}</text>\n", L - 10,
                           py(yv) + 5, yv);
    }
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"16\" text-anchor=\"middle\">x</text>\n", (L + W - R) / 2,
                       H - 15);
    svg += fmt::format("<text x=\"20\" y=\"{}\" font-size=\"16\" text-anchor=\"middle\">Q(x)</text>\n", (T + H - B) / 2);

    svg += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        svg += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", px(xs[i]), py(qs[i]));
    }
    svg += "\"/>\n";
    if (peak.x >= xmin && peak.x <= xmax) {
        svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"#c0392b\"/>\n", px(peak.x), py(peak.value));
        svg += fmt::format(
            "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"14\" fill=\"#c0392b\">max x={:.6g}, Q={:.6g}</text>\n",
            px(peak.x) + 8, py(peak.value) - 8, peak.x, peak.value);
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    return fmt::format("{:.17g}", v);
}

Config parse_config(const json& doc) {
    if (!doc.is_object()) throw InvalidArgument("config: expected a JSON object");
    static const char* known[] = {"g0", "gamma", "eps", "hbar", "s0", "s1", "S", "rel_tol", "abs_tol", "samples"};
    for (const auto& [key, value] : doc.items()) {
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
            std::end(known)) {
            throw InvalidArgument(key + ": unknown config key");
        }
    }
    Config c;
    if (doc.contains("g0")) c.g0 = numbers(doc, "g0");
    if (doc.contains("gamma")) c.gamma = gammas(doc.at("gamma"));
    if (doc.contains("eps")) c.eps = numbers(doc, "eps");
    if (doc.contains("hbar")) c.hbar = number(doc, "hbar");
    if (doc.contains("s0")) c.s0 = number(doc, "s0");
    if (doc.contains("s1")) c.s1 = number(doc, "s1");
    if (doc.contains("S")) c.half_window = number(doc, "S");
    if (doc.contains("rel_tol")) c.integrator.rel_tol = number(doc, "rel_tol");
    if (doc.contains("abs_tol")) c.integrator.abs_tol = number(doc, "abs_tol");
    if (doc.contains("samples")) {
        const json& v = doc.at("samples");
        if (!v.is_number_integer() || v.get<long long>() < 2) throw InvalidArgument("samples: expected an integer >= 2");
        c.samples = v.get<std::size_t>();
    }

    for (double g : c.g0) {
        if (!(g > 0.0)) throw InvalidArgument("g0: must be > 0");
    }
    for (double e : c.eps) {
        if (!(e > 0.0)) throw InvalidArgument("eps: must be > 0");
    }
    if (!(c.hbar > 0.0)) throw InvalidArgument("hbar: must be > 0");
    if (c.half_window && !(*c.half_window > 0.0)) throw InvalidArgument("S: must be > 0");
    if (c.half_window && (c.s0 || c.s1)) throw InvalidArgument("S: cannot be combined with s0/s1");
    if (c.s0.has_value() != c.s1.has_value()) throw InvalidArgument(c.s0 ? "s1: missing" : "s0: missing");
    if (c.s0 && !(*c.s0 < *c.s1)) throw InvalidArgument("s0: must be < s1");
    c.integrator.validate();
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidArgument("config: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("config: parse error: ") + e.what());
    }
    return parse_config(doc);
}

std::vector<RunSpec> Config::expand() const {
    std::vector<RunSpec> out;
    for (double g : g0) {
        for (const auto& gam : gamma) {
            for (double e : eps) {
                RunSpec spec;
                spec.p.g0 = g;
                spec.p.gamma = gam;
                spec.p.hbar = hbar;
                spec.eps = e;
                if (s0) {
                    spec.s0 = *s0;
                    spec.s1 = *s1;
                } else {
                    const double S = half_window ? *half_window : default_half_window(spec.p);
                    spec.s0 = -S;
                    spec.s1 = S;
                }
                spec.cfg = integrator;
                spec.sample_count = samples;
                out.push_back(spec);
            }
        }
    }
    return out;
}

Row evaluate(const RunSpec& spec, bool keep_trajectory) {
    Row row;
    row.spec = spec;
    try {
        row.run = run_tunneling(spec);
        if (!keep_trajectory) row.run->traj = {};
        row.t_eq10 = finite_interval_tunneling(spec.p, spec.eps, spec.s0, spec.s1, kQuadTol).T;
        if (spec.p.gamma.is_constant()) row.t_eq6 = dephasing_tunneling(spec.p, spec.eps);
    } catch (const Error& e) {
        row.run.reset();
        row.status = status_of(e);
    }
    return row;
}

std::string format_row(const Row& row) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double t_ode = row.run ? row.run->result.T : nan;
    const double t_eq10 = row.run ? row.t_eq10 : nan;
    const double dev = row.run && row.t_eq10 != 0.0 ? t_ode / row.t_eq10 - 1.0 : nan;
    return fmt::format("{},{},{},{},{},{},{},{},{},{}", num(row.spec.p.g0), gamma_label(row.spec.p.gamma),
                       num(row.spec.eps), num(row.spec.s0), num(row.spec.s1), num(t_ode), num(t_eq10),
                       num(row.run && row.t_eq6 ? *row.t_eq6 : nan), num(dev), row.status);
}

int cmd_qcurve(const QCurveOptions& opts, std::ostream& out, std::ostream& err) {
    if (!(opts.xmin >= 0.0) || !(opts.xmax > opts.xmin)) {
        err << "error: xmin/xmax: need 0 <= xmin < xmax\n";
        return kValidationError;
    }
    if (opts.points < 2) {
        err << "error: points: need at least 2\n";
        return kValidationError;
    }
    if (opts.format != "csv" && opts.format != "json" && opts.format != "svg") {
        err << "error: format: expected csv, json or svg\n";
        return kValidationError;
    }
    std::vector<double> xs(opts.points), qs(opts.points);
    for (std::size_t i = 0; i < opts.points; ++i) {
        xs[i] = i + 1 == opts.points ? opts.xmax
                                     : opts.xmin + (opts.xmax - opts.xmin) * double(i) / double(opts.points - 1);
        qs[i] = q_closed(xs[i]);
    }
    const Extremum peak = q_maximum();

    std::string content;
    if (opts.format == "csv") {
        content = "x,Q\n";
        for (std::size_t i = 0; i < xs.size(); ++i) content += num(xs[i]) + "," + num(qs[i]) + "\n";
    } else if (opts.format == "json") {
        json doc;
        doc["x"] = xs;
        doc["Q"] = qs;
        doc["maximum"] = {{"x", peak.x}, {"Q", peak.value}};
        content = doc.dump(2) + "\n";
    } else {
        content = render_svg(xs, qs, peak);
    }
    if (!write_file(opts.out, content, err)) return kValidationError;
    out << "wrote " << opts.points << " points to " << opts.out << " (maximum of Q at x=" << num(peak.x)
        << ", Q=" << num(peak.value) << ")\n";
    return kOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
    std::vector<RunSpec> specs;
    try {
        specs = load_config(config_path).expand();
        if (specs.size() != 1) throw InvalidArgument("config: simulate expects single values, not grids");
    } catch (const Error& e) {
        err << "invalid config: " << e.what() << "\n";
        return kValidationError;
    }
    const Row row = evaluate(specs.front(), true);
    if (!row.run) {
        err << "error: run failed (" << row.status << ")\n";
        return kNumericalFailure;
    }
    const TunnelingRun& run = *row.run;
    const ModelParams& p = row.spec.p;

    std::string content = std::string("# ") + kSweepHeader + "\n# " + format_row(row) + "\n";
    content += fmt::format("# method={} evals={} accepted={} rejected={} tolerance_achieved={}\n",
                           method_tag(run.result.method), run.result.evals, run.result.accepted_steps,
                           run.result.rejected_steps, num(run.result.tolerance_achieved));
    content += "s,P_plus,offdiag\n";
    for (std::size_t i = 0; i < run.traj.s.size(); ++i) {
        const SpectralData sd = spectral(run.traj.s[i], p);
        const Mat2 pp = sd.p_plus;
        content += num(run.traj.s[i]) + "," + num(trace(run.traj.rho[i] * pp).real()) + "," +
                   num(offdiag_norm(run.traj.rho[i], sd)) + "\n";
    }
    if (!write_file(out_path, content, err)) return kValidationError;

    out << "T_ode  (master equation)       = " << num(run.result.T) << "\n";
    out << "T_eq10 (finite-interval quad.) = " << num(row.t_eq10) << "\n";
    out << "T_eq6  (closed form, eps*Q)    = " << (row.t_eq6 ? num(*row.t_eq6) : std::string("n/a")) << "\n";
    if (p.gamma.is_constant() && *p.gamma.constant_value() == 0.0) {
        out << "T_lz   (Landau-Zener)          = " << num(lz_probability(p.g0, row.spec.eps, p.hbar)) << "\n";
    }
    out << "window [" << num(row.spec.s0) << ", " << num(row.spec.s1) << "], " << run.result.accepted_steps
        << " steps, " << run.result.evals << " evaluations\n";
    return kOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path, unsigned jobs, std::ostream& out,
              std::ostream& err) {
    std::vector<RunSpec> specs;
    try {
        specs = load_config(config_path).expand();
    } catch (const Error& e) {
        err << "invalid config: " << e.what() << "\n";
        return kValidationError;
    }
    if (jobs == 0) jobs = 1;
    std::vector<Row> rows(specs.size());
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> workers;
        const unsigned n = std::min<unsigned>(jobs, unsigned(specs.size()));
        for (unsigned w = 0; w < n; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < specs.size(); i = next++) rows[i] = evaluate(specs[i], false);
            });
        }
    }

    std::string content = std::string(kSweepHeader) + "\n";
    bool failed = false;
    for (const Row& r : rows) {
        content += format_row(r) + "\n";
        failed = failed || r.status != "ok";
    }
    if (!write_file(out_path, content, err)) return kValidationError;
    out << "wrote " << rows.size() << " rows to " << out_path << (failed ? " (some runs failed)" : "") << "\n";
    return failed ? kNumericalFailure : kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    std::vector<PropertyCheck> checks;
    try {
        checks = run_suite(suite, seed);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kNumericalFailure;
    }
    bool all_pass = true;
    for (const auto& c : checks) {
        out << fmt::format("{} [{}] {}: measured {:.3e}, threshold {:.3e}, instances {}\n", c.pass ? "PASS" : "FAIL",
                           c.suite, c.name, c.measured, c.threshold, c.instances);
        all_pass = all_pass && c.pass;
    }
    out << (all_pass ? "all properties passed" : "some properties FAILED") << " (seed " << seed << ")\n";
    return all_pass ? kOk : kVerificationFailure;
}

int cmd_predict(double g0, double gamma, double eps, double hbar, std::ostream& out, std::ostream& err) {
    if (!(g0 > 0.0) || !std::isfinite(g0)) {
        err << "error: g0: must be finite and > 0\n";
        return kValidationError;
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        err << "error: gamma: must be finite and >= 0\n";
        return kValidationError;
    }
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        err << "error: eps: must be finite and > 0\n";
        return kValidationError;
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        err << "error: hbar: must be finite and > 0\n";
        return kValidationError;
    }
    ModelParams p;
    p.g0 = g0;
    p.gamma = GammaProfile::constant(gamma);
    p.hbar = hbar;
    const double x = hbar * gamma / g0;
    const double prefactor = eps * hbar / (2.0 * g0 * g0);

    out << "x = hbar*gamma/g0          = " << num(x) << "\n";
    out << "lz_probability             = " << num(lz_probability(g0, eps, hbar)) << "\n";
    out << "dephasing_tunneling        = " << num(dephasing_tunneling(p, eps)) << "\n";
    out << "asymptotic_weak            = " << num(prefactor * asymptotic_weak(x)) << "\n";
    out << "asymptotic_strong          = " << (x > 0.0 ? num(prefactor * asymptotic_strong(x)) : "n/a") << "\n";
    out << "regime                     = "
        << (x < 1.0 ? "weak dephasing (hbar*gamma < g0)"
                    : x > 1.0 ? "strong dephasing / Zeno (hbar*gamma > g0)" : "crossover (hbar*gamma = g0)")
        << "\n";
    if (eps >= hbar * gamma * gamma) {
        out << "warning: eps >= hbar*gamma^2 = " << num(hbar * gamma * gamma)
            << "; the adiabatic dephasing formula need not be accurate\n";
    }
    return kOk;
}

}  // namespace lzdeph::cli
