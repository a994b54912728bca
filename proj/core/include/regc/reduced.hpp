#pragma once

#include <optional>

#include <Eigen/Dense>

#include "regc/graph.hpp"
#include "regc/partition.hpp"

namespace regc {

/// The reduced graph: one vertex per partition class, edge weights equal to
/// inter-class densities. A compressed stand-in for the original graph.
struct ReducedGraph {
    int k = 0;
    Eigen::MatrixXd weights;            // k x k symmetric, zero diagonal
    std::vector<VertexSet> class_map;   // reduced vertex -> source class
};

/// Builds the reduced graph from a partition: all k(k-1)/2 pairs carry their
/// inter-class density; the exceptional class is excluded. An optional
/// density threshold zeroes edges below it (off by default, matching the
/// all-pairs construction the pipeline relies on).
ReducedGraph build_reduced(const AffinityGraph& g, const EquitablePartition& p,
                           std::optional<double> density_threshold = std::nullopt);

}  // namespace regc
