#include <benchmark/benchmark.h>

#include "shotnoise/dynamics.hpp"
#include "shotnoise/estimators.hpp"
#include "shotnoise/exponent.hpp"
#include "shotnoise/rng.hpp"

using namespace shotnoise;

static void BM_SolveR(benchmark::State& state) {
    const ModelParams p = canonical_model();
    for (auto _ : state) benchmark::DoNotOptimize(solve_R(p).R);
}
BENCHMARK(BM_SolveR);

static void BM_TiltedPath(benchmark::State& state) {
    const ModelParams p = canonical_model().with_capital(static_cast<double>(state.range(0)));
    SimConfig cfg;
    cfg.measure = Tilted{solve_R(p).R};
    std::uint64_t i = 0, events = 0;
    for (auto _ : state) {
        RandomStream s(7, i++);
        const PathResult r = simulate_path(p, cfg, s);
        events += r.final_state.events();
    }
    state.counters["events/path"] = benchmark::Counter(static_cast<double>(events) / static_cast<double>(i));
}
BENCHMARK(BM_TiltedPath)->Arg(0)->Arg(10)->Arg(40);

static void BM_PhysicalPath(benchmark::State& state) {
    const ModelParams p = canonical_model();
    SimConfig cfg;
    cfg.horizon = static_cast<double>(state.range(0));
    std::uint64_t i = 0;
    for (auto _ : state) {
        RandomStream s(7, i++);
        benchmark::DoNotOptimize(simulate_path(p, cfg, s).ruined);
    }
}
BENCHMARK(BM_PhysicalPath)->Arg(100)->Arg(400);

static void BM_ImportanceSampling(benchmark::State& state) {
    const ModelParams p = canonical_model();
    const AdjustmentCoefficient adj = solve_R(p);
    RunOptions o;
    o.seed = 3;
    o.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(is_ruin_probability(p, adj, 10'000, o).estimate.point);
}
BENCHMARK(BM_ImportanceSampling)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
