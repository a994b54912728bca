#include <benchmark/benchmark.h>

#include "regc/generators.hpp"
#include "regc/graph.hpp"

using namespace regc;

namespace {

void BM_density(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    PlantedPartition pp = gen_planted_partition({n / 2, n / 2}, 0.6, 0.1, 1);
    const VertexSet a = VertexSet::range(0, n / 2);
    const VertexSet b = VertexSet::range(n / 2, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(density(pp.graph, a, b));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_density)->Range(64, 2048)->Complexity(benchmark::oNSquared);

void BM_deviation_matrix(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    PlantedPartition pp = gen_planted_partition({n / 2, n / 2}, 0.6, 0.1, 2);
    const VertexSet a = VertexSet::range(0, n / 2);
    const VertexSet b = VertexSet::range(n / 2, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(deviation_matrix(pp.graph, a, b));
    }
}
BENCHMARK(BM_deviation_matrix)->Range(64, 2048);

void BM_planted_generator(benchmark::State& state) {
    const int block = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen_planted_partition({block, block, block}, 0.7, 0.05, 3));
    }
}
BENCHMARK(BM_planted_generator)->Range(64, 512);

}  // namespace
