#include <benchmark/benchmark.h>

#include "regc/clustering.hpp"
#include "regc/generators.hpp"
#include "regc/partition.hpp"
#include "regc/reduced.hpp"

using namespace regc;

namespace {

RegularityConfig pipeline_config() {
    RegularityConfig cfg;
    cfg.epsilon = 0.25;
    cfg.l = 2;
    cfg.checker = CheckerKind::fk;
    cfg.seed = 9;
    cfg.threads = 1;
    return cfg;
}

void BM_run_ppr(benchmark::State& state) {
    const int block = static_cast<int>(state.range(0));
    PlantedPartition pp = gen_planted_partition({block, block, block}, 0.7, 0.05, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ppr(pp.graph, pipeline_config()));
    }
}
BENCHMARK(BM_run_ppr)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

// The compression payoff: spectral clustering of the reduced graph versus
// the full graph.
void BM_spectral_reduced(benchmark::State& state) {
    const int block = static_cast<int>(state.range(0));
    PlantedPartition pp = gen_planted_partition({block, block, block}, 0.7, 0.05, 4);
    PprResult ppr = run_ppr(pp.graph, pipeline_config());
    ReducedGraph reduced = build_reduced(pp.graph, ppr.partition);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_njw(reduced.weights, 3, 2));
    }
}
BENCHMARK(BM_spectral_reduced)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_spectral_full(benchmark::State& state) {
    const int block = static_cast<int>(state.range(0));
    PlantedPartition pp = gen_planted_partition({block, block, block}, 0.7, 0.05, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_njw(pp.graph.weights(), 3, 2));
    }
}
BENCHMARK(BM_spectral_full)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_regularity_cluster(benchmark::State& state) {
    const int block = static_cast<int>(state.range(0));
    PlantedPartition pp = gen_planted_partition({block, block, block}, 0.7, 0.05, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(regularity_cluster(pp.graph, 3, pipeline_config()));
    }
}
BENCHMARK(BM_regularity_cluster)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
