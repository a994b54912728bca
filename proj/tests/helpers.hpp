#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "regc/graph.hpp"
#include "regc/rng.hpp"

namespace regc::test {

/// Random symmetric weighted graph with i.i.d. uniform weights.
inline AffinityGraph random_weighted_graph(int n, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            w(i, j) = w(j, i) = rng.next_unit();
        }
    }
    return AffinityGraph(std::move(w), AffinityGraph::Mode::weighted);
}

/// Erdos-Renyi style binary graph G(n, p).
inline AffinityGraph random_binary_graph(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.next_unit() < p) w(i, j) = w(j, i) = 1.0;
        }
    }
    return AffinityGraph(std::move(w), AffinityGraph::Mode::binary);
}

/// Union of disjoint cliques, one per size entry.
inline AffinityGraph clique_union(const std::vector<int>& sizes) {
    int n = 0;
    for (int s : sizes) n += s;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    int base = 0;
    for (int s : sizes) {
        for (int i = base; i < base + s; ++i) {
            for (int j = i + 1; j < base + s; ++j) {
                w(i, j) = w(j, i) = 1.0;
            }
        }
        base += s;
    }
    return AffinityGraph(std::move(w), AffinityGraph::Mode::binary);
}

/// Random matrix with entries uniform in [-1, 1].
inline Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = 2.0 * rng.next_unit() - 1.0;
    }
    return m;
}

/// The 8+8 block pair: classes vs = {0..7}, vt = {8..15}; vs splits into
/// A1 = {0..3}, A2 = {4..7}, vt into B1 = {8..11}, B2 = {12..15}; edges are
/// complete on A1-B1 and A2-B2 and absent elsewhere, so d(vs,vt) = 1/2.
inline AffinityGraph block_pair_graph() {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(16, 16);
    for (int i = 0; i < 4; ++i) {
        for (int j = 8; j < 12; ++j) w(i, j) = w(j, i) = 1.0;
    }
    for (int i = 4; i < 8; ++i) {
        for (int j = 12; j < 16; ++j) w(i, j) = w(j, i) = 1.0;
    }
    return AffinityGraph(std::move(w), AffinityGraph::Mode::binary);
}

}  // namespace regc::test
