#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace regc {

/// An ordered set of distinct vertex indices, stored sorted ascending.
/// Duplicate or negative ids are rejected at construction.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<int> ids);

    /// Contiguous range [lo, hi).
    static VertexSet range(int lo, int hi);

    int size() const { return static_cast<int>(ids_.size()); }
    bool empty() const { return ids_.empty(); }
    const std::vector<int>& ids() const { return ids_; }
    int operator[](std::size_t i) const { return ids_[i]; }

    bool contains(int v) const;
    bool disjoint_from(const VertexSet& other) const;
    /// True when every id lies in [0, n).
    bool valid_for(int n) const;

    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

private:
    std::vector<int> ids_;
};

/// Symmetric weighted graph over n vertices. Weights live in [0, 1] with a
/// zero diagonal; `binary` mode additionally restricts weights to {0, 1}.
/// Immutable after construction, so all queries are safe to run concurrently.
class AffinityGraph {
public:
    enum class Mode { binary, weighted };

    /// Validates symmetry, range, diagonal and (for binary mode) 0/1 weights.
    AffinityGraph(Eigen::MatrixXd weights, Mode mode);

    int size() const { return static_cast<int>(weights_.rows()); }
    Mode mode() const { return mode_; }
    double weight(int i, int j) const { return weights_(i, j); }
    const Eigen::MatrixXd& weights() const { return weights_; }

    /// Sum of weights over a x b (the weighted edge count e(A,B)).
    double edge_weight(const VertexSet& a, const VertexSet& b) const;

    /// Copies the a x b sub-block of the weight matrix.
    Eigen::MatrixXd block(const VertexSet& a, const VertexSet& b) const;

private:
    Eigen::MatrixXd weights_;
    Mode mode_;
};

std::string to_string(AffinityGraph::Mode mode);
AffinityGraph::Mode mode_from_string(const std::string& s);

/// Edge density d(A,B) = e(A,B) / (|A| |B|), in [0, 1]. On binary graphs
/// this is the plain edge count ratio; on weighted graphs the weight mass
/// ratio. Requires a, b nonempty and disjoint.
double density(const AffinityGraph& g, const VertexSet& a, const VertexSet& b);

/// Centered sub-block: W[i][j] = w(a_i, b_j) - d(a, b). The grand sum of W
/// is zero by construction; entries measure pointwise density deviation.
Eigen::MatrixXd deviation_matrix(const AffinityGraph& g, const VertexSet& a,
                                 const VertexSet& b);

}  // namespace regc
