#include <benchmark/benchmark.h>

#include "regc/generators.hpp"
#include "regc/regularity.hpp"

#include "../tests/helpers.hpp"

using namespace regc;

namespace {

void BM_first_singular_value(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Eigen::MatrixXd m = test::random_matrix(n, n, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(first_singular_value(m, 1e-9, 50000, 3));
    }
}
BENCHMARK(BM_first_singular_value)->Range(16, 1024);

void BM_check_pair_alon(benchmark::State& state) {
    const int half = static_cast<int>(state.range(0));
    PlantedPartition pp = gen_planted_partition({half, half}, 0.7, 0.1, 5);
    const VertexSet vs = VertexSet::range(0, half);
    const VertexSet vt = VertexSet::range(half, 2 * half);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_pair_alon(pp.graph, vs, vt, 0.25));
    }
}
BENCHMARK(BM_check_pair_alon)->Range(32, 512);

void BM_check_pair_fk(benchmark::State& state) {
    const int half = static_cast<int>(state.range(0));
    PlantedPartition pp = gen_planted_partition({half, half}, 0.7, 0.1, 5);
    const VertexSet vs = VertexSet::range(0, half);
    const VertexSet vt = VertexSet::range(half, 2 * half);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_pair_fk(pp.graph, vs, vt, 0.25, 11));
    }
}
BENCHMARK(BM_check_pair_fk)->Range(32, 512);

}  // namespace
