#pragma once

#include <cstdint>
#include <vector>

#include "regc/graph.hpp"

namespace regc {

/// Random bipartite 0/1 graph on p+q vertices (parts [0,p) and [p,p+q)).
/// Every cross pair becomes an edge independently with probability dens.
/// Deterministic in the seed.
AffinityGraph gen_random_bipartite(int p, int q, double dens, std::uint64_t seed);

struct PlantedPartition {
    AffinityGraph graph;
    std::vector<int> true_labels;  // block id per vertex
};

/// Planted-partition (stochastic block) 0/1 graph: within-block edges appear
/// with probability p_in, cross-block with p_out <= p_in. Vertices are laid
/// out block by block; true_labels records block membership.
PlantedPartition gen_planted_partition(const std::vector<int>& block_sizes,
                                       double p_in, double p_out,
                                       std::uint64_t seed);

}  // namespace regc
