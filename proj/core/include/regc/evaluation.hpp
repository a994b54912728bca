#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

namespace regc {

struct AccuracyReport {
    double accuracy = 0.0;          // percentage in [0, 100]
    std::map<int, int> mapping;     // cluster id -> true label id
    Eigen::MatrixXi confusion;      // clusters x true labels, counts
};

/// Minimum-cost perfect assignment on a square cost matrix (Hungarian /
/// shortest augmenting path). Returns row -> column. Among equally optimal
/// assignments the lexicographically smallest one is returned.
std::vector<int> hungarian(const Eigen::MatrixXd& cost);

/// Clustering accuracy: the fraction of points whose cluster label, mapped
/// through the optimal injective cluster->class map, equals the true label.
/// The contingency table is zero-padded to square when label counts differ.
AccuracyReport accuracy(const std::vector<int>& true_labels,
                        const std::vector<int>& cluster_labels);

/// Enumeration oracle for accuracy(): maximizes the match count over all
/// injective maps. Distinct label count capped at 6.
double accuracy_bruteforce(const std::vector<int>& true_labels,
                           const std::vector<int>& cluster_labels);

}  // namespace regc
