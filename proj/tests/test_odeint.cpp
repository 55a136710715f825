#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lzdeph/odeint.hpp"

using namespace lzdeph;
using C = std::complex<double>;

TEST_CASE("zero right-hand side keeps the state") {
    const StateVec<3> y0{C(1, 2), C(-3, 0.5), C(0, 0)};
    const auto t = integrate<3>([](double, const StateVec<3>&) { return StateVec<3>{}; }, y0, 0.0, 5.0,
                                IntegratorConfig{});
    CHECK(t.back().s == 5.0);
    CHECK(t.back().y == y0);
}

TEST_CASE("exponential decay") {
    const auto rhs = [](double, const StateVec<1>& y) { return StateVec<1>{-y[0]}; };
    const auto t = integrate<1>(rhs, {C(1.0)}, 0.0, 1.0, IntegratorConfig{});
    CHECK(t.front().s == 0.0);
    CHECK(t.back().s == 1.0);
    CHECK(std::abs(t.back().y[0] - std::exp(-1.0)) <= 1e-9);
    for (std::size_t i = 1; i < t.samples.size(); ++i) CHECK(t.samples[i].s > t.samples[i - 1].s);
}

TEST_CASE("phase rotation over one period") {
    const double w = 10.0;
    const auto rhs = [w](double, const StateVec<1>& y) { return StateVec<1>{C(0, w) * y[0]}; };
    const auto t = integrate<1>(rhs, {C(1.0)}, 0.0, 2 * std::numbers::pi / w, IntegratorConfig{}, 101);
    CHECK(std::abs(t.back().y[0] - 1.0) <= 1e-8);
    for (const auto& smp : t.samples) CHECK(std::abs(std::abs(smp.y[0]) - 1.0) <= 1e-9);
}

TEST_CASE("dense output matches the exact solution on a sample grid") {
    const auto rhs = [](double s, const StateVec<2>& y) {
        return StateVec<2>{y[1], -y[0] + 0.0 * s};
    };
    const auto t = integrate<2>(rhs, {C(0.0), C(1.0)}, 0.0, 10.0, IntegratorConfig{}, 2001);
    REQUIRE(t.samples.size() == 2001);
    CHECK(t.back().s == 10.0);
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
        const double s = t.samples[i].s;
        CHECK(s == doctest::Approx(10.0 * double(i) / 2000.0).epsilon(1e-14));
        CHECK(std::abs(t.samples[i].y[0] - std::sin(s)) <= 1e-8);
    }
}

TEST_CASE("tightening the tolerance reduces the error") {
    const auto rhs = [](double, const StateVec<1>& y) { return StateVec<1>{-y[0]}; };
    IntegratorConfig loose;
    loose.rel_tol = 1e-5;
    loose.abs_tol = 1e-20;
    IntegratorConfig tight = loose;
    tight.rel_tol = loose.rel_tol / 2;
    const auto e_loose = std::abs(integrate<1>(rhs, {C(1)}, 0, 1, loose).back().y[0] - std::exp(-1.0));
    const auto e_tight = std::abs(integrate<1>(rhs, {C(1)}, 0, 1, tight).back().y[0] - std::exp(-1.0));
    CHECK(e_tight < e_loose);

    // Four halvings together must cut the error by well over 4x.
    IntegratorConfig tighter = loose;
    tighter.rel_tol = loose.rel_tol / 16;
    const auto e_tighter =
        std::abs(integrate<1>(rhs, {C(1)}, 0, 1, tighter).back().y[0] - std::exp(-1.0));
    CHECK(e_loose / e_tighter >= 4.0);
}

TEST_CASE("deterministic trajectories") {
    const auto rhs = [](double s, const StateVec<2>& y) {
        return StateVec<2>{C(0, s) * y[1], C(0, 1) * y[0] - 0.1 * y[1]};
    };
    const auto a = integrate<2>(rhs, {C(1), C(0)}, -3, 3, IntegratorConfig{});
    const auto b = integrate<2>(rhs, {C(1), C(0)}, -3, 3, IntegratorConfig{});
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].s == b.samples[i].s);
        CHECK(a.samples[i].y == b.samples[i].y);
    }
    CHECK(a.evals == b.evals);
}

TEST_CASE("empty interval yields a single sample") {
    const auto t = integrate<1>([](double, const StateVec<1>& y) { return y; }, {C(2)}, 1.0, 1.0,
                                IntegratorConfig{}, 2001);
    REQUIRE(t.samples.size() == 1);
    CHECK(t.back().y[0] == C(2));
}

TEST_CASE("error paths") {
    const auto blowup = [](double s, const StateVec<1>&) { return StateVec<1>{C(1.0 / (1.0 - s))}; };
    IntegratorConfig cfg;
    cfg.min_step = 1e-6;
    try {
        integrate<1>(blowup, {C(0)}, 0.0, 2.0, cfg);
        FAIL("expected StepUnderflow");
    } catch (const StepUnderflow<1>& e) {
        CHECK(e.last_s < 1.0);
        CHECK(e.last_s > 0.9);
        CHECK(std::isfinite(e.last_state[0].real()));
    }

    IntegratorConfig budget;
    budget.max_evals = 50;
    const auto osc = [](double, const StateVec<1>& y) { return StateVec<1>{C(0, 1000) * y[0]}; };
    CHECK_THROWS_AS(integrate<1>(osc, {C(1)}, 0.0, 10.0, budget), EvalBudgetExceeded<1>);

    CHECK_THROWS_AS(integrate<1>(osc, {C(1)}, 1.0, 0.0, IntegratorConfig{}), InvalidArgument);
    CHECK_THROWS_AS(integrate<1>(osc, {C(1)}, 0.0, 1.0, IntegratorConfig{}, 1), InvalidArgument);
    IntegratorConfig bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate<1>(osc, {C(1)}, 0.0, 1.0, bad), InvalidArgument);
}
