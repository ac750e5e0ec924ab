#include <benchmark/benchmark.h>

#include "erfeo/bogoliubov.hpp"
#include "erfeo/resonances.hpp"
#include "erfeo/srpt.hpp"
#include "erfeo/sweeps.hpp"

using namespace erfeo;

static void BM_EquilibriumOrdered(benchmark::State& st) {
    ModelConfig cfg = default_config();
    cfg.env.T = 2.0;
    for (auto _ : st) benchmark::DoNotOptimize(solve_equilibrium(cfg));
}
BENCHMARK(BM_EquilibriumOrdered)->Unit(benchmark::kMillisecond);

static void BM_EquilibriumNormal(benchmark::State& st) {
    ModelConfig cfg = default_config();
    cfg.env.T = 10.0;
    for (auto _ : st) benchmark::DoNotOptimize(solve_equilibrium(cfg));
}
BENCHMARK(BM_EquilibriumNormal)->Unit(benchmark::kMillisecond);

static void BM_Semiclassical(benchmark::State& st) {
    const ReducedDicke r = reduce_for_ltpt(dicke_params(default_config()), 0.0);
    for (auto _ : st) benchmark::DoNotOptimize(semiclassical_equilibrium(r, 2.0));
}
BENCHMARK(BM_Semiclassical)->Unit(benchmark::kMicrosecond);

static void BM_CriticalTemperature(benchmark::State& st) {
    const ModelConfig cfg = default_config();
    for (auto _ : st) benchmark::DoNotOptimize(critical_temperature(cfg, Method::mean_field));
}
BENCHMARK(BM_CriticalTemperature)->Unit(benchmark::kMillisecond);

static void BM_MeanFieldResonances(benchmark::State& st) {
    const ModelConfig cfg = default_config();
    for (auto _ : st) benchmark::DoNotOptimize(mf_resonances(cfg, 20.0, Vec3(0, 0, 4.0)));
}
BENCHMARK(BM_MeanFieldResonances)->Unit(benchmark::kMillisecond);

static void BM_DickeResonances(benchmark::State& st) {
    const ModelConfig cfg = default_config();
    for (auto _ : st) benchmark::DoNotOptimize(dicke_resonances(cfg, 20.0, Axis::c, 4.0));
}
BENCHMARK(BM_DickeResonances)->Unit(benchmark::kMicrosecond);

static void BM_PhaseDiagramRow(benchmark::State& st) {
    const ModelConfig cfg = default_config();
    const auto Bs = make_grid(-2.0, 2.0, 0.05);
    for (auto _ : st)
        benchmark::DoNotOptimize(phase_diagram(cfg, Axis::a, {3.0}, Bs, Method::mean_field, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_PhaseDiagramRow)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
