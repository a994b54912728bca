#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regc/clustering.hpp"
#include "regc/dataset.hpp"
#include "regc/partition.hpp"

namespace regc {

/// Search grid for the two meta-parameters: 25 linearly spaced epsilon
/// values in [0.15, 0.50] and refinement numbers 2..7 by default, scored by
/// five-fold cross-validation.
struct GridSearchSpec {
    std::vector<double> epsilon_grid;
    std::vector<int> l_values;
    int folds = 5;

    static GridSearchSpec defaults();
    void validate() const;
};

/// Shared pipeline knobs: how feature data becomes a graph, and how
/// exceptional vertices are reassigned.
struct PipelineConfig {
    SigmaMode sigma = SigmaMode::median();
    std::optional<double> binarize_threshold;
    int kappa = 5;
    int threads = 0;
    int max_iters = 30;
};

struct GridCell {
    double epsilon = 0.0;
    int l = 0;
    double mean_accuracy = 0.0;  // mean validation accuracy over folds
    int failed_folds = 0;        // folds that errored (scored as 0)
};

struct GridSearchResult {
    double best_epsilon = 0.0;
    int best_l = 0;
    double validation_accuracy = 0.0;  // best cell's mean validation accuracy
    double reported_accuracy = 0.0;    // mean held-out accuracy at the best cell
    std::vector<GridCell> cells;       // epsilon-major, l-minor order
};

/// Learns (epsilon, l) by scoring every grid cell on each validation fold
/// with the regularity-clustering accuracy, then reports the mean accuracy
/// over the held-out complements under the learned parameters. Ties prefer
/// smaller epsilon, then smaller l. Deterministic in the seed.
GridSearchResult grid_search(const Dataset& ds, int k, const GridSearchSpec& spec,
                             CheckerKind checker, std::uint64_t seed,
                             const PipelineConfig& pipe = {});

struct BenchmarkRow {
    std::string dataset;
    int features = 0;
    int n = 0;
    int compression_k = 0;  // reduced-graph size of the tuned full-data run
    double regular_alon = 0.0;
    double regular_fk = 0.0;
    double spectral_knn = 0.0;
    double spectral_full = 0.0;
    double kmeans_acc = 0.0;
    int k = 0;
    int knn_neighbors = 0;
    std::string error;  // nonempty when the dataset failed entirely
};

/// One full comparison row: grid-searched regularity clustering with both
/// checkers, the two spectral baselines (knn graph and fully connected) and
/// k-means. k defaults to the number of distinct labels.
BenchmarkRow benchmark_dataset(const Dataset& ds, std::optional<int> k_override,
                               const GridSearchSpec& spec, std::uint64_t seed,
                               const PipelineConfig& pipe = {});

/// CSV table with the fixed header
/// dataset,features,compression,regular1,regular2,spect1,spect2,kmeans.
std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);

/// JSON table including the run configuration, for auditing.
std::string benchmark_json(const std::vector<BenchmarkRow>& rows,
                           const GridSearchSpec& spec, std::uint64_t seed,
                           const PipelineConfig& pipe);

/// Row subset of a dataset (fold extraction helper; kept public for tests).
Dataset subset_rows(const Dataset& ds, const std::vector<int>& rows);

/// Seeded disjoint fold cover of [0, n); fold sizes differ by at most one.
std::vector<std::vector<int>> make_folds(int n, int folds, std::uint64_t seed);

}  // namespace regc
