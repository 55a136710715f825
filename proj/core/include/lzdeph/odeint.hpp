#pragma once

// Adaptive Dormand-Prince 5(4) integrator for complex vector ODEs y' = f(s, y).
//
// Step control uses the max-norm of |err_i| / (abs_tol + rel_tol * max(|y_i|, |y_new_i|))
// with safety factor 0.9 and step-ratio clamp [0.2, 5]. Samples are either every
// accepted step or a fixed grid filled from the 4th-order continuous extension.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lzdeph/error.hpp"

namespace lzdeph {

template <std::size_t N>
using StateVec = std::array<std::complex<double>, N>;

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double min_step = 1e-12;
    std::size_t max_evals = 500'000'000;

    void validate() const {
        if (!(rel_tol > 0.0)) throw InvalidArgument("rel_tol: must be > 0");
        if (!(abs_tol > 0.0)) throw InvalidArgument("abs_tol: must be > 0");
        if (!(min_step > 0.0)) throw InvalidArgument("min_step: must be > 0");
        if (!(max_step >= min_step)) throw InvalidArgument("max_step: must be >= min_step");
        if (max_evals == 0) throw InvalidArgument("max_evals: must be > 0");
    }
};

template <std::size_t N>
struct Sample {
    double s;
    StateVec<N> y;
};

template <std::size_t N>
struct Trajectory {
    std::vector<Sample<N>> samples;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evals = 0;

    const Sample<N>& front() const { return samples.front(); }
    const Sample<N>& back() const { return samples.back(); }
};

/// Integration aborted; carries the last accepted point.
template <std::size_t N>
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double s, const StateVec<N>& y)
        : Error(what), last_s(s), last_state(y) {}
    double last_s;
    StateVec<N> last_state;
};

template <std::size_t N>
class StepUnderflow : public IntegrationError<N> {
public:
    using IntegrationError<N>::IntegrationError;
};

template <std::size_t N>
class EvalBudgetExceeded : public IntegrationError<N> {
public:
    using IntegrationError<N>::IntegrationError;
};

namespace dopri5 {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Difference between the 5th- and 4th-order weights.
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (Hairer, Norsett & Wanner).
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dopri5

/// Integrates y' = rhs(s, y) from s0 to s1 (s1 >= s0).
///
/// sample_count == 0 records every accepted step; sample_count >= 2 records
/// that many equally spaced points (first at s0, last exactly at s1) using
/// dense output. s1 == s0 yields a single sample.
template <std::size_t N, class Rhs>
Trajectory<N> integrate(Rhs&& rhs, const StateVec<N>& y0, double s0, double s1,
                        const IntegratorConfig& cfg, std::size_t sample_count = 0) {
    using namespace dopri5;
    using V = StateVec<N>;
    cfg.validate();
    if (!(s1 >= s0)) throw InvalidArgument("integrate: requires s1 >= s0");
    if (sample_count == 1) throw InvalidArgument("integrate: sample_count must be 0 or >= 2");

    Trajectory<N> traj;
    traj.samples.push_back({s0, y0});
    if (s1 == s0) return traj;

    const double span = s1 - s0;
    std::size_t next_sample = 1;
    auto sample_at = [&](std::size_t k) {
        return k + 1 == sample_count ? s1 : s0 + span * double(k) / double(sample_count - 1);
    };
    if (sample_count >= 2) traj.samples.reserve(sample_count);

    auto eval = [&](double s, const V& y) {
        if (traj.evals >= cfg.max_evals) {
            throw EvalBudgetExceeded<N>("integrate: max_evals exceeded", s, y);
        }
        ++traj.evals;
        return rhs(s, y);
    };
    auto combo = [](const V& y, double h, std::initializer_list<std::pair<double, const V*>> terms) {
        V out = y;
        for (std::size_t i = 0; i < N; ++i) {
            std::complex<double> acc = 0.0;
            for (const auto& [w, k] : terms) acc += w * (*k)[i];
            out[i] += h * acc;
        }
        return out;
    };
    auto scale = [&](const V& a, const V& b, std::size_t i) {
        return cfg.abs_tol + cfg.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
    };

    double s = s0;
    V y = y0;
    V k1 = eval(s, y);

    // Initial step guess (Hairer's heuristic, max-norm).
    double h;
    {
        double dy = 0.0, df = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = scale(y, y, i);
            dy = std::max(dy, std::abs(y[i]) / sk);
            df = std::max(df, std::abs(k1[i]) / sk);
        }
        double h0 = (dy < 1e-5 || df < 1e-5) ? 1e-6 : 0.01 * dy / df;
        h0 = std::min({h0, span, cfg.max_step});
        V y1 = combo(y, h0, {{1.0, &k1}});
        V f1 = eval(s + h0, y1);
        double d2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            d2 = std::max(d2, std::abs(f1[i] - k1[i]) / scale(y, y, i));
        }
        d2 /= h0;
        const double dm = std::max(df, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, 1e-3 * h0) : std::pow(0.01 / dm, 0.2);
        h = std::min({100.0 * h0, h1, cfg.max_step});
        h = std::max(h, cfg.min_step);
    }

    bool last_rejected = false;
    while (s < s1) {
        if (h < cfg.min_step || s + h == s) {
            throw StepUnderflow<N>("integrate: step size underflow", s, y);
        }
        double step = std::min(h, cfg.max_step);
        bool final_step = false;
        if (s + step >= s1 || s + 1.01 * step >= s1) {
            step = s1 - s;
            final_step = true;
        }

        const V k2 = eval(s + c2 * step, combo(y, step, {{a21, &k1}}));
        const V k3 = eval(s + c3 * step, combo(y, step, {{a31, &k1}, {a32, &k2}}));
        const V k4 = eval(s + c4 * step, combo(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const V k5 = eval(s + c5 * step,
                          combo(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const V k6 = eval(s + step, combo(y, step,
                                          {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const V y_new = combo(y, step, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        const double s_new = final_step ? s1 : s + step;
        const V k7 = eval(s_new, y_new);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const std::complex<double> e =
                step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            err = std::max(err, std::abs(e) / scale(y, y_new, i));
        }

        double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
        fac = std::clamp(fac, 0.2, 5.0);

        if (!(err <= 1.0)) {
            ++traj.rejected;
            last_rejected = true;
            h = step * std::min(1.0, fac);
            continue;
        }

        ++traj.accepted;
        if (sample_count == 0) {
            traj.samples.push_back({s_new, y_new});
        } else {
            V r2, r3, r4, r5;
            bool dense_ready = false;
            while (next_sample < sample_count && sample_at(next_sample) <= s_new) {
                const double sk = sample_at(next_sample);
                if (sk == s_new) {
                    traj.samples.push_back({sk, y_new});
                } else {
                    if (!dense_ready) {
                        for (std::size_t i = 0; i < N; ++i) {
                            const auto ydiff = y_new[i] - y[i];
                            const auto bspl = step * k1[i] - ydiff;
                            r2[i] = ydiff;
                            r3[i] = bspl;
                            r4[i] = ydiff - step * k7[i] - bspl;
                            r5[i] = step * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                            d6 * k6[i] + d7 * k7[i]);
                        }
                        dense_ready = true;
                    }
                    const double th = (sk - s) / step;
                    const double th1 = 1.0 - th;
                    V yk;
                    for (std::size_t i = 0; i < N; ++i) {
                        yk[i] = y[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
                    }
                    traj.samples.push_back({sk, yk});
                }
                ++next_sample;
            }
        }

        s = s_new;
        y = y_new;
        k1 = k7;
        h = step * (last_rejected ? std::min(1.0, fac) : fac);
        last_rejected = false;
    }
    return traj;
}

}  // namespace lzdeph
