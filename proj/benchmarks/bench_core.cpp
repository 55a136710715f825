#include <benchmark/benchmark.h>

#include "lzdeph/experiments.hpp"
#include "lzdeph/formulas.hpp"
#include "lzdeph/lindblad.hpp"

using namespace lzdeph;

namespace {

ModelParams dephasing(double gamma) {
    ModelParams p;
    p.gamma = GammaProfile::constant(gamma);
    return p;
}

void BM_ApplyL(benchmark::State& state) {
    const ModelParams p = dephasing(1.0);
    const SpectralData sd = spectral(0.3, p);
    Mat2 rho = sd.p_minus;
    rho(0, 1) += cplx(0.1, 0.2);
    rho(1, 0) += cplx(0.1, -0.2);
    for (auto _ : state) {
        rho = rho + 1e-3 * apply_L(sd, p.hbar * 1.0, rho);
        benchmark::DoNotOptimize(rho);
    }
}
BENCHMARK(BM_ApplyL);

void BM_Spectral(benchmark::State& state) {
    const ModelParams p = dephasing(1.0);
    double s = -5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral(s, p));
        s = s > 5.0 ? -5.0 : s + 1e-3;
    }
}
BENCHMARK(BM_Spectral);

void BM_QQuadrature(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(q_quadrature(x));
}
BENCHMARK(BM_QQuadrature)->Arg(1)->Arg(10)->Arg(100);

void BM_MasterEquation(benchmark::State& state) {
    RunSpec spec;
    spec.p = dephasing(1.0);
    spec.eps = 0.1;
    spec.s0 = -10.0;
    spec.s1 = 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(measure_tunneling(spec).T);
}
BENCHMARK(BM_MasterEquation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
