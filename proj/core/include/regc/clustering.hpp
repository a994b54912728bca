#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "regc/graph.hpp"
#include "regc/partition.hpp"
#include "regc/reduced.hpp"

namespace regc {

struct ClusterAssignment {
    std::vector<int> labels;  // one id in [0, k_clusters) per vertex
    int k_clusters = 0;
    std::string method;       // provenance tag
};

struct KMeansResult {
    std::vector<int> labels;
    Eigen::MatrixXd centers;            // k x d
    std::vector<double> inertia_history;  // one entry per Lloyd iteration
    int iterations = 0;
};

/// Lloyd's algorithm with seeded k-means++ initialization, run to an
/// assignment fixpoint or max_iter. Empty clusters are re-seeded from the
/// point farthest from its center. Deterministic in the seed.
KMeansResult kmeans_lloyd(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                          int max_iter = 300);

ClusterAssignment kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                         int max_iter = 300);

/// Spectral clustering in the normalized-affinity style: rows of the top-k
/// eigenvector matrix of D^-1/2 A D^-1/2, unit-normalized, clustered with
/// k-means. Zero-degree vertices keep zero rows and land with the nearest
/// center.
ClusterAssignment spectral_njw(const Eigen::MatrixXd& affinity, int k,
                               std::uint64_t seed);

/// Lifts reduced-graph labels to the original vertices: every member of
/// class i receives reduced label i. Exceptional vertices get -1.
std::vector<int> project_labels(const EquitablePartition& p,
                                const ClusterAssignment& reduced_labels);

/// Fills the -1 entries: each exceptional vertex takes the majority label
/// among its kappa highest-affinity labeled neighbors (ties by larger
/// summed affinity, then lower label id). All decisions read the
/// pre-assignment labeling, so the result is order-independent.
std::vector<int> assign_exceptional(const AffinityGraph& g, std::vector<int> labels,
                                    const VertexSet& exceptional, int kappa);

struct RegularityClusterResult {
    ClusterAssignment assignment;
    RunTrace trace;
    ReducedGraph reduced;
    EquitablePartition partition;
};

/// The two-phase pipeline: regularity partition -> reduced graph -> spectral
/// clustering of the reduced density matrix -> projection plus k-NN
/// reassignment of exceptional vertices.
RegularityClusterResult regularity_cluster(const AffinityGraph& g, int k,
                                           const RegularityConfig& cfg, int kappa = 5);

/// Symmetrized k-nearest-neighbour sparsification: keeps w(i,j) when j is
/// among i's `neighbors` strongest affinities or vice versa. Baseline
/// helper for knn-graph spectral clustering.
Eigen::MatrixXd knn_affinity(const Eigen::MatrixXd& affinity, int neighbors);

}  // namespace regc
