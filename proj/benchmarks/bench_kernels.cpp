#include <benchmark/benchmark.h>

#include "rrlab/kernels.hpp"

using namespace rrlab;

static void BM_XiAlpha(benchmark::State& state) {
    auto ctx = make_kernel_context(static_cast<double>(state.range(0)), 1.0);
    double s = 0.0;
    for (auto _ : state) {
        s += 1e-4;
        benchmark::DoNotOptimize(xi_alpha(ctx, s));
    }
}
BENCHMARK(BM_XiAlpha)->Arg(100)->Arg(1000000);

static void BM_RhoAlpha(benchmark::State& state) {
    auto ctx = make_kernel_context(1e4, 1.0);
    double s = 0.0;
    for (auto _ : state) {
        s += 1e-4;
        benchmark::DoNotOptimize(rho_alpha(ctx, s));
    }
}
BENCHMARK(BM_RhoAlpha);

static void BM_FAlphaZero(benchmark::State& state) {
    auto ctx = make_kernel_context(static_cast<double>(state.range(0)), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(f_alpha_zero(ctx));
}
BENCHMARK(BM_FAlphaZero)->Arg(1000)->Arg(1000000);

static void BM_ZetaLadder(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(zeta_const(1.0 + 1e-9 * state.iterations()));
}
BENCHMARK(BM_ZetaLadder)->Unit(benchmark::kMillisecond);
