#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lzdeph/error.hpp"
#include "lzdeph/formulas.hpp"
#include "lzdeph/quad.hpp"

using namespace lzdeph;
using std::numbers::pi;

TEST_CASE("finite interval examples") {
    const auto lin = integrate_adaptive([](double t) { return t; }, 0.0, 1.0, 1e-14);
    CHECK(std::abs(lin.value - 0.5) <= 1e-14);

    const auto atan = integrate_adaptive([](double t) { return 4.0 / (1.0 + t * t); }, 0.0, 1.0, 1e-13);
    CHECK(std::abs(atan.value - pi) <= 1e-12);
    CHECK(std::abs(atan.value - pi) <= atan.error_estimate + 1e-15);

    const auto odd = integrate_adaptive([](double t) { return t * t * t; }, -1.0, 1.0, 1e-14);
    CHECK(std::abs(odd.value) <= 1e-14);
}

TEST_CASE("real line examples") {
    const auto lor = integrate_real_line([](double t) { return 1.0 / (1.0 + t * t); }, 1e-13);
    CHECK(std::abs(lor.value - pi) <= 1e-12);

    // Oracle: closed-form Q at x = 1.
    const auto q1 = integrate_real_line(
        [](double t) {
            const double u = t * t + 1.0;
            return 1.0 / (u * u * (u + 1.0));
        },
        1e-11);
    CHECK(std::abs(q1.value - 0.650645142284286504) <= 1e-9);
    CHECK(std::abs(q1.value - q_closed(1.0)) <= 1e-9);

    const auto odd = integrate_real_line([](double t) { return t / std::pow(1.0 + t * t, 2); }, 1e-12);
    CHECK(std::abs(odd.value) <= 1e-12);
}

TEST_CASE("error estimate bounds the true error") {
    struct Case {
        RealFn f;
        double a, b, exact;
    };
    const Case cases[] = {
        {[](double t) { return std::exp(t); }, 0.0, 3.0, std::exp(3.0) - 1.0},
        {[](double t) { return std::sin(20 * t); }, 0.0, 1.0, (1 - std::cos(20.0)) / 20},
        {[](double t) { return 1.0 / (1e-2 + t * t); }, -1.0, 1.0, 2 * 10 * std::atan(10.0)},
        {[](double t) { return std::sqrt(t); }, 0.0, 1.0, 2.0 / 3.0},
    };
    for (double tol : {1e-6, 1e-9, 1e-12}) {
        for (const auto& c : cases) {
            const auto r = integrate_adaptive(c.f, c.a, c.b, tol);
            CHECK(std::abs(r.value - c.exact) <= r.error_estimate + 1e-15);
            CHECK(r.error_estimate <= tol);
        }
    }
}

TEST_CASE("quadrature error paths") {
    CHECK_THROWS_AS(integrate_adaptive([](double t) { return t; }, 1.0, 0.0, 1e-9), InvalidArgument);
    CHECK_THROWS_AS(integrate_adaptive([](double t) { return t; }, 0.0, 1.0, 0.0), InvalidArgument);
    // The panel touching the 1/sqrt(t) singularity never meets a 1e-30 budget.
    CHECK_THROWS_AS(integrate_adaptive([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, 1e-30),
                    QuadratureError);
}
