#include <bowl/generator.hpp>
#include <bowl/profiles.hpp>
#include <bowl/simulator.hpp>
#include <bowl/solver.hpp>
#include <bowl/stats.hpp>

#include <benchmark/benchmark.h>

#include <vector>

namespace {

void BM_SolveSalbp(benchmark::State &state) {
    bowl::GeneratorOptions options;
    options.tasks = static_cast<int>(state.range(0));
    options.stations = 5;
    options.structure = bowl::GraphStructure::Bottleneck;
    options.seed = 11;
    const auto instance = bowl::generate_salbp(options);
    const auto profile = bowl::load_profile(5, bowl::Rational(1), bowl::Rational(97, 100));
    for (auto _ : state) benchmark::DoNotOptimize(bowl::solve_salbp(instance, profile));
}
BENCHMARK(BM_SolveSalbp)->Arg(12)->Arg(18)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_SolveAlwabp(benchmark::State &state) {
    bowl::GeneratorOptions options;
    options.tasks = static_cast<int>(state.range(0));
    options.stations = 4;
    options.seed = 5;
    const auto base = bowl::generate_salbp(options);
    const auto instance = bowl::generate_alwabp(base, bowl::WorkerVariance::Low, 0.1, 5);
    const auto profile = bowl::balanced_profile(4);
    for (auto _ : state) benchmark::DoNotOptimize(bowl::solve_alwabp(instance, profile));
}
BENCHMARK(BM_SolveAlwabp)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

bowl::SimConfig line_of(int stations) {
    bowl::SimConfig config;
    config.station_means.assign(static_cast<std::size_t>(stations), {4.0, 3.0, 3.0});
    config.station_cvs.assign(static_cast<std::size_t>(stations), 0.1);
    config.seed = 3;
    return config;
}

void BM_Replication(benchmark::State &state) {
    const auto config = line_of(static_cast<int>(state.range(0)));
    std::uint64_t index = 0;
    for (auto _ : state) benchmark::DoNotOptimize(bowl::run_replication(config, index++));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Replication)->Arg(5)->Arg(20);

void BM_MonteCarlo(benchmark::State &state) {
    const auto config = line_of(5);
    for (auto _ : state) benchmark::DoNotOptimize(bowl::run_monte_carlo(config, 300, {1, false}));
}
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);

void BM_WelchTTest(benchmark::State &state) {
    std::vector<double> a(static_cast<std::size_t>(state.range(0)));
    std::vector<double> b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = 100.0 + static_cast<double>(i % 17);
        b[i] = 101.5 + static_cast<double>(i % 13);
    }
    for (auto _ : state) benchmark::DoNotOptimize(bowl::welch_t_test(a, b));
}
BENCHMARK(BM_WelchTTest)->Arg(30)->Arg(300);

} // namespace

BENCHMARK_MAIN();
