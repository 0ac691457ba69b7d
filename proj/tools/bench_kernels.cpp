// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "stratclass/adversaries.hpp"
#include "stratclass/engine.hpp"
#include "stratclass/kernels.hpp"

using namespace stratclass;

namespace {

ManipulationGraph bench_graph(int n) { return random_graph({n, 8.0 / n, 0.05, 1.0, 0}, 1); }

template <auto Kernel>
void BM_ShortestPath(benchmark::State& state) {
    const auto g = bench_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(g.adjacency()));
}

template <auto Kernel>
void BM_HopCosts(benchmark::State& state) {
    const auto g = bench_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(g.adjacency()));
}

template <auto Kernel>
void BM_PositiveWeights(benchmark::State& state) {
    const auto hc = random_family(256, static_cast<std::size_t>(state.range(0)), 0.1, 2);
    const std::vector<double> w(hc.size(), 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(hc.positive_by_node(), w));
}

template <auto Kernel>
void BM_PositiveCounts(benchmark::State& state) {
    const auto hc = random_family(256, static_cast<std::size_t>(state.range(0)), 0.1, 2);
    const BitVector alive(hc.size(), true);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(hc.positive_by_node(), alive));
}

template <auto Oracle>
void BM_OptOracle(benchmark::State& state) {
    const auto g = bench_graph(64);
    const auto hc = random_family(64, static_cast<std::size_t>(state.range(0)), 0.1, 3);
    const auto seq = random_agnostic_sequence(g, CostModel::ShortestPath, hc[0], 2000, 4, 0.1);
    g.cost_row(CostModel::ShortestPath, 0);  // warm the cost cache
    for (auto _ : state) benchmark::DoNotOptimize(Oracle(g, Protocol::deterministic(), hc, seq));
}

}  // namespace

BENCHMARK(BM_ShortestPath<kernels::shortest_path_costs_serial>)->Arg(256)->Arg(1024);
BENCHMARK(BM_ShortestPath<kernels::shortest_path_costs>)->Arg(256)->Arg(1024);
BENCHMARK(BM_HopCosts<kernels::hop_costs_serial>)->Arg(256)->Arg(1024);
BENCHMARK(BM_HopCosts<kernels::hop_costs>)->Arg(256)->Arg(1024);
BENCHMARK(BM_PositiveWeights<kernels::positive_weights_serial>)->Arg(4096)->Arg(65536);
BENCHMARK(BM_PositiveWeights<kernels::positive_weights>)->Arg(4096)->Arg(65536);
BENCHMARK(BM_PositiveCounts<kernels::positive_counts_serial>)->Arg(4096)->Arg(65536);
BENCHMARK(BM_PositiveCounts<kernels::positive_counts>)->Arg(4096)->Arg(65536);
BENCHMARK(BM_OptOracle<opt_oracle_serial>)->Arg(1024)->Arg(16384);
BENCHMARK(BM_OptOracle<opt_oracle>)->Arg(1024)->Arg(16384);

BENCHMARK_MAIN();
