#include "lzdeph/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lzdeph/error.hpp"

namespace lzdeph {

GammaProfile GammaProfile::constant(double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw InvalidArgument("gamma: constant rate must be finite and >= 0");
    }
    GammaProfile prof;
    prof.data_ = value;
    return prof;
}

GammaProfile GammaProfile::piecewise_linear(std::vector<Breakpoint> points) {
    if (points.empty()) {
        throw InvalidArgument("gamma: breakpoint table is empty");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].gamma >= 0.0) || !std::isfinite(points[i].gamma) ||
            !std::isfinite(points[i].s)) {
            throw InvalidArgument("gamma: breakpoint values must be finite and >= 0");
        }
        if (i > 0 && !(points[i].s > points[i - 1].s)) {
            throw InvalidArgument("gamma: breakpoints must be strictly increasing in s");
        }
    }
    GammaProfile prof;
    prof.data_ = std::move(points);
    return prof;
}

std::optional<double> GammaProfile::constant_value() const {
    if (const auto* v = std::get_if<double>(&data_)) return *v;
    return std::nullopt;
}

std::vector<double> GammaProfile::kinks() const {
    std::vector<double> out;
    if (const auto* t = table()) {
        out.reserve(t->size());
        for (const auto& bp : *t) out.push_back(bp.s);
    }
    return out;
}

double GammaProfile::at(double s) const {
    if (const auto* v = std::get_if<double>(&data_)) return *v;
    const auto& t = std::get<std::vector<Breakpoint>>(data_);
    if (s <= t.front().s) return t.front().gamma;
    if (s >= t.back().s) return t.back().gamma;
    const auto hi = std::upper_bound(t.begin(), t.end(), s,
                                     [](double x, const Breakpoint& bp) { return x < bp.s; });
    const auto lo = hi - 1;
    const double w = (s - lo->s) / (hi->s - lo->s);
    return (1.0 - w) * lo->gamma + w * hi->gamma;
}

void ModelParams::validate() const {
    if (!(g0 > 0.0) || !std::isfinite(g0)) throw InvalidArgument("g0: must be finite and > 0");
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgument("hbar: must be finite and > 0");
}

HermMat2 hamiltonian(double s, const ModelParams& p) {
    return HermMat2::from_pauli(0.0, 0.5 * p.g0, 0.0, 0.5 * s);
}

double gap(double s, const ModelParams& p) { return std::hypot(s, p.g0); }

SpectralData spectral(double s, const ModelParams& p) {
    const double g = gap(s, p);
    const double nx = p.g0 / g;
    const double nz = s / g;
    // d/ds of (g0, 0, s)/g is (g0/g^3) * (-s, 0, g0).
    const double k = 0.5 * p.g0 / (g * g * g);
    return {s,
            g,
            -0.5 * g,
            0.5 * g,
            HermMat2::from_pauli(0.5, -0.5 * nx, 0.0, -0.5 * nz),
            HermMat2::from_pauli(0.5, 0.5 * nx, 0.0, 0.5 * nz),
            HermMat2::from_pauli(0.0, k * s, 0.0, -k * p.g0),
            HermMat2::from_pauli(0.0, -k * s, 0.0, k * p.g0)};
}

}  // namespace lzdeph
