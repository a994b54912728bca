#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "regc/errors.hpp"
#include "regc/evaluation.hpp"
#include "regc/rng.hpp"

using namespace regc;

namespace {

/// Brute-force minimum assignment cost over all permutations.
double oracle_min_cost(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += cost(i, perm[static_cast<std::size_t>(i)]);
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<int> random_labels(int n, int k, Rng& rng) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
    return v;
}

}  // namespace

TEST_CASE("hungarian: identity-favoring and 1x1 costs") {
    Eigen::MatrixXd cost = Eigen::MatrixXd::Ones(4, 4);
    cost.diagonal().setZero();
    CHECK(hungarian(cost) == std::vector<int>{0, 1, 2, 3});

    Eigen::MatrixXd one(1, 1);
    one(0, 0) = 42.0;
    CHECK(hungarian(one) == std::vector<int>{0});

    Eigen::MatrixXd bad(2, 3);
    bad.setZero();
    CHECK_THROWS_AS(hungarian(bad), InvalidArgument);
}

TEST_CASE("hungarian equals the permutation oracle on random integer costs") {
    Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(5));  // up to 6x6
        Eigen::MatrixXd cost(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                cost(i, j) = static_cast<double>(rng.next_below(30));
            }
        }
        const std::vector<int> assign = hungarian(cost);
        double total = 0.0;
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            total += cost(i, assign[static_cast<std::size_t>(i)]);
            CHECK_FALSE(used[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])]);
            used[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])] = 1;
        }
        CHECK(total == doctest::Approx(oracle_min_cost(cost)));
    }
}

TEST_CASE("hungarian picks the lexicographically smallest optimum") {
    // All optima cost 0; the smallest assignment is the identity.
    Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
    CHECK(hungarian(zero) == std::vector<int>{0, 1, 2});

    // Two optimal assignments: (0,1) or (1,0); lexicographic keeps (0,1).
    Eigen::MatrixXd tie(2, 2);
    tie << 1.0, 2.0, 2.0, 3.0;  // both diagonals cost 4
    CHECK(hungarian(tie) == std::vector<int>{0, 1});
}

TEST_CASE("accuracy: permutation-invariant examples") {
    CHECK(accuracy({1, 1, 2, 2}, {2, 2, 1, 1}).accuracy == doctest::Approx(100.0));
    CHECK(accuracy({1, 1, 2, 2}, {1, 1, 1, 1}).accuracy == doctest::Approx(50.0));
    CHECK(accuracy({0, 0, 1, 1, 2, 2}, {1, 1, 0, 0, 2, 2}).accuracy == doctest::Approx(100.0));
}

TEST_CASE("accuracy: report fields fit together") {
    AccuracyReport r = accuracy({0, 0, 1, 1}, {3, 3, 8, 9});
    // clusters {3, 8, 9} against labels {0, 1}: 3 -> 0 and one of 8/9 -> 1.
    CHECK(r.accuracy == doctest::Approx(75.0));
    CHECK(r.mapping.at(3) == 0);
    CHECK(r.confusion.rows() == 3);
    CHECK(r.confusion.cols() == 2);
    CHECK(r.confusion.sum() == 4);
    // Injectivity of the mapping.
    std::vector<int> targets;
    for (const auto& [c, t] : r.mapping) targets.push_back(t);
    std::sort(targets.begin(), targets.end());
    CHECK(std::adjacent_find(targets.begin(), targets.end()) == targets.end());

    CHECK_THROWS_AS(accuracy({}, {}), InvalidArgument);
    CHECK_THROWS_AS(accuracy({1, 2}, {1}), InvalidArgument);
}

TEST_CASE("accuracy equals the enumeration oracle on random labelings") {
    Rng rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(58));
        const int k_true = 1 + static_cast<int>(rng.next_below(5));
        const int k_clus = 1 + static_cast<int>(rng.next_below(5));
        std::vector<int> truth = random_labels(n, k_true, rng);
        std::vector<int> clus = random_labels(n, k_clus, rng);
        CHECK(accuracy(truth, clus).accuracy ==
              doctest::Approx(accuracy_bruteforce(truth, clus)));
    }
}

TEST_CASE("accuracy_bruteforce basics and bounds") {
    CHECK(accuracy_bruteforce({3, 1, 3}, {3, 1, 3}) == doctest::Approx(100.0));
    CHECK(accuracy_bruteforce({0}, {5}) == doctest::Approx(100.0));
    std::vector<int> seven(10);
    std::iota(seven.begin(), seven.end(), 0);
    CHECK_THROWS_AS(accuracy_bruteforce(seven, seven), InvalidArgument);

    // With k_clusters <= k_true <= n at least one point is matchable.
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_below(40));
        std::vector<int> truth = random_labels(n, 3, rng);
        std::vector<int> clus = random_labels(n, 2, rng);
        const double acc = accuracy(truth, clus).accuracy;
        CHECK(acc >= 100.0 / n - 1e-12);
        CHECK(acc <= 100.0 + 1e-12);
    }
}

TEST_CASE("accuracy invariant under relabeling of clusters") {
    Rng rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 5 + static_cast<int>(rng.next_below(30));
        std::vector<int> truth = random_labels(n, 4, rng);
        std::vector<int> clus = random_labels(n, 4, rng);
        // pi: cyclic shift of cluster names.
        std::vector<int> shifted(clus);
        for (auto& c : shifted) c = (c + 1) % 4;
        CHECK(accuracy(truth, clus).accuracy ==
              doctest::Approx(accuracy(truth, shifted).accuracy));
    }
}
