#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rrlab/memconv.hpp"

using namespace rrlab;

static void BM_ConvTime(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = std::cos(0.05 * i) * std::exp(-1e-4 * (n - i));
    for (auto _ : state) {
        auto r = conv_time(f, 0.01, 1.0);
        benchmark::DoNotOptimize(r.value);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_ConvTime)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();
