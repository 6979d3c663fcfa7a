#include <benchmark/benchmark.h>

#include <cmath>

#include "rrlab/quadrature.hpp"

using namespace rrlab;

static void BM_AdaptiveGaussian(benchmark::State& state) {
    for (auto _ : state) {
        auto r = integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-12,
                                    1e-12);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_AdaptiveGaussian);

static void BM_OscillatoryTransform(benchmark::State& state) {
    const double s = static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto r = integrate_oscillatory([](double k) { return std::exp(-0.5 * k * k); }, s,
                                       Trig::Sin, 30.0, 1e-12, 1e-12);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_OscillatoryTransform)->Arg(2)->Arg(20);

static void BM_PrincipalValue(benchmark::State& state) {
    for (auto _ : state) {
        auto r = pv_cauchy([](double k) { return std::exp(-0.1 * k * k); }, 0.0, 10.0, 1.0,
                           1e-12, 1e-12);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_PrincipalValue);
