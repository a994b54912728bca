#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "regc/graph.hpp"

namespace regc {

struct Dataset {
    Eigen::MatrixXd features;             // n x d
    std::optional<std::vector<int>> labels;
    std::string name;
    int rows_dropped = 0;                 // rows removed for missing values
};

/// Column selector: by 0-based index or by header name.
using ColumnSelector = std::variant<int, std::string>;

/// Loads a delimited numeric table (comma or whitespace; header row
/// auto-detected). The optional label column may hold arbitrary text; labels
/// are integer-coded by first appearance. Rows with missing values (empty,
/// "?", "NA", "nan") are dropped and counted. When standardize is set each
/// feature column is z-scored; constant columns become zero.
Dataset load_csv(const std::string& path,
                 std::optional<ColumnSelector> label_column = std::nullopt,
                 bool standardize = true);

struct SigmaMode {
    bool median_heuristic = true;
    double fixed_value = 0.0;

    static SigmaMode median() { return {true, 0.0}; }
    static SigmaMode fixed(double v) { return {false, v}; }
};

/// Fully connected Gaussian-kernel affinity graph:
/// w(i,j) = exp(-|x_i - x_j|^2 / (2 sigma^2)) with zero diagonal. Under the
/// median heuristic sigma is the median pairwise Euclidean distance.
AffinityGraph build_affinity(const Dataset& ds, SigmaMode sigma_mode = SigmaMode::median(),
                             int threads = 0);

/// Chosen kernel bandwidth for the dataset (median pairwise distance or the
/// fixed value); exposed so pipelines can record the configuration they ran.
double resolve_sigma(const Dataset& ds, SigmaMode sigma_mode);

/// Thresholds a weighted graph into a 0/1 graph: edge iff weight >= threshold.
AffinityGraph binarize(const AffinityGraph& g, double threshold);

/// Seeded Gaussian blobs with one block per entry of block_sizes; block b is
/// centered at separation*b along a diagonal direction. Synthetic labeled
/// data for tests and fixtures.
Dataset make_blobs(const std::vector<int>& block_sizes, int dim, double separation,
                   std::uint64_t seed);

}  // namespace regc
