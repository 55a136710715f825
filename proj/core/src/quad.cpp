#include "lzdeph/quad.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "lzdeph/error.hpp"

namespace lzdeph {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the Gauss 7-point nodes.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kMaxDepth = 60;

struct Panel {
    double a;
    double b;
    int depth;
};

struct RuleOut {
    double kronrod;
    double gauss;
    double abs_sum;
};

RuleOut gk15(const RealFn& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double k = wgk[7] * fc;
    double g = wg[3] * fc;
    double absk = std::abs(k);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        k += wgk[j] * (f1 + f2);
        absk += wgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) g += wg[j / 2] * (f1 + f2);
    }
    return {k * half, g * half, absk * std::abs(half)};
}

}  // namespace

QuadResult gauss_kronrod_15(const RealFn& f, double a, double b) {
    const RuleOut r = gk15(f, a, b);
    return {r.kronrod, std::abs(r.kronrod - r.gauss), 15, 1};
}

QuadResult integrate_adaptive(const RealFn& f, double a, double b, double tol) {
    if (!(a < b)) throw InvalidArgument("integrate_adaptive: requires a < b");
    if (!(tol > 0.0)) throw InvalidArgument("integrate_adaptive: tol must be > 0");

    const double width = b - a;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    QuadResult out;
    std::vector<Panel> stack{{a, b, 0}};
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const RuleOut r = gk15(f, p.a, p.b);
        out.evals += 15;
        const double err = std::abs(r.kronrod - r.gauss);
        const double share = tol * (p.b - p.a) / width;
        if (err <= share || err <= 50.0 * eps * r.abs_sum) {
            out.value += r.kronrod;
            out.error_estimate += err;
            ++out.intervals;
            continue;
        }
        if (p.depth >= kMaxDepth) {
            throw QuadratureError("integrate_adaptive: subdivision depth limit exceeded");
        }
        const double mid = 0.5 * (p.a + p.b);
        stack.push_back({mid, p.b, p.depth + 1});
        stack.push_back({p.a, mid, p.depth + 1});
    }
    return out;
}

QuadResult integrate_real_line(const RealFn& f, double tol) {
    constexpr double half_pi = 0.5 * std::numbers::pi;
    const RealFn g = [&f](double theta) {
        const double c = std::cos(theta);
        if (c == 0.0) return 0.0;
        return f(std::tan(theta)) / (c * c);
    };
    return integrate_adaptive(g, -half_pi, half_pi, tol);
}

}  // namespace lzdeph
