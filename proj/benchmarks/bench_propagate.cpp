#include <benchmark/benchmark.h>

#include "rrlab/meanfield.hpp"

using namespace rrlab;

static void BM_PropagateStep2D(benchmark::State& state) {
    ModelConfig cfg;
    cfg.dim = 2;
    cfg.charge = 0.05;
    cfg.grid_n = static_cast<int>(state.range(0));
    cfg.grid_L = 16.0;
    PulseSpec pulse;
    pulse.amplitude = 0.01;
    pulse.omega_L = 0.9;
    pulse.t_center = 1.0;
    pulse.sigma = 2.0;
    pulse.polarization = Vec(1.0, 0.0);
    for (auto _ : state) {
        auto res = propagate(cfg, pulse, 0.5, 0.01);
        benchmark::DoNotOptimize(res.norm.back());
    }
    state.SetItemsProcessed(state.iterations() * 50);
}
BENCHMARK(BM_PropagateStep2D)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_ModeReconstruction(benchmark::State& state) {
    ModelConfig cfg;
    cfg.dim = 2;
    cfg.charge = 0.1;
    cfg.alpha = 100.0;
    SwitchingProfile sw;
    sw.q = 0.1;
    sw.T_sw = 50.0;
    sw.t_on = -600.0;
    auto tr = harmonic_trajectory(0.05, 1.0, 0, 2, sw, 0.0, 0.02, 5001);
    for (auto _ : state) {
        auto modes = reconstruct_modes(cfg, tr, 8);
        benchmark::DoNotOptimize(modes.beta.back());
    }
}
BENCHMARK(BM_ModeReconstruction);

BENCHMARK_MAIN();
