#include "regc/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "regc/errors.hpp"

namespace regc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Jonker-Volgenant shortest augmenting path on a square matrix; returns the
/// minimum total cost and (optionally) the row -> column assignment.
double solve_assignment(const Eigen::MatrixXd& cost, std::vector<int>* assignment) {
    const int n = static_cast<int>(cost.rows());
    // 1-indexed with a virtual 0 row/column.
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            int j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                                   v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    double total = 0.0;
    if (assignment) assignment->assign(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j) {
        const int i = p[static_cast<std::size_t>(j)];
        total += cost(i - 1, j - 1);
        if (assignment) (*assignment)[static_cast<std::size_t>(i) - 1] = j - 1;
    }
    return total;
}

/// Optimal cost of the subproblem restricted to the given rows and columns.
double subproblem_value(const Eigen::MatrixXd& cost, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
    if (rows.empty()) return 0.0;
    Eigen::MatrixXd sub(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                cost(rows[i], cols[j]);
        }
    }
    return solve_assignment(sub, nullptr);
}

}  // namespace

std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    if (n == 0 || cost.cols() != n) {
        throw InvalidArgument("hungarian: cost matrix must be square and nonempty");
    }
    if (!cost.allFinite()) throw InvalidArgument("hungarian: cost entries must be finite");

    const double optimum = solve_assignment(cost, nullptr);
    // Fix rows in order to the smallest column admitting an optimal
    // completion; yields the lexicographically smallest optimal assignment.
    const double slack = 1e-9 * (1.0 + std::abs(optimum));
    std::vector<int> result(static_cast<std::size_t>(n), -1);
    std::vector<int> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), 0);
    std::vector<int> cols = rows;
    double fixed_cost = 0.0;
    for (int i = 0; i < n; ++i) {
        rows.erase(rows.begin());
        bool placed = false;
        for (std::size_t cj = 0; cj < cols.size() && !placed; ++cj) {
            const int j = cols[cj];
            const double with_j = fixed_cost + cost(i, j);
            std::vector<int> rest_cols = cols;
            rest_cols.erase(rest_cols.begin() + static_cast<std::ptrdiff_t>(cj));
            if (with_j + subproblem_value(cost, rows, rest_cols) <= optimum + slack) {
                result[static_cast<std::size_t>(i)] = j;
                fixed_cost = with_j;
                cols = std::move(rest_cols);
                placed = true;
            }
        }
        if (!placed) throw NumericError("hungarian: failed to canonicalize assignment");
    }
    return result;
}

namespace {

std::vector<int> distinct_sorted(const std::vector<int>& labels) {
    std::vector<int> d(labels);
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

int index_of_label(const std::vector<int>& distinct, int label) {
    return static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), label) -
                            distinct.begin());
}

Eigen::MatrixXi contingency(const std::vector<int>& truth, const std::vector<int>& clusters,
                            const std::vector<int>& true_ids, const std::vector<int>& cluster_ids) {
    Eigen::MatrixXi table = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(cluster_ids.size()),
                                                  static_cast<Eigen::Index>(true_ids.size()));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        table(index_of_label(cluster_ids, clusters[i]), index_of_label(true_ids, truth[i])) += 1;
    }
    return table;
}

}  // namespace

AccuracyReport accuracy(const std::vector<int>& true_labels,
                        const std::vector<int>& cluster_labels) {
    if (true_labels.empty()) throw InvalidArgument("accuracy: empty input");
    if (true_labels.size() != cluster_labels.size()) {
        throw InvalidArgument("accuracy: label vectors differ in length");
    }
    const std::vector<int> true_ids = distinct_sorted(true_labels);
    const std::vector<int> cluster_ids = distinct_sorted(cluster_labels);
    const Eigen::MatrixXi table = contingency(true_labels, cluster_labels, true_ids, cluster_ids);

    // Pad to square and minimize negated counts == maximize matches.
    const int dim = static_cast<int>(std::max(true_ids.size(), cluster_ids.size()));
    Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(dim, dim);
    cost.topLeftCorner(table.rows(), table.cols()) = -table.cast<double>();

    const std::vector<int> assign = hungarian(cost);

    AccuracyReport report;
    report.confusion = table;
    long matched = 0;
    for (int r = 0; r < static_cast<int>(cluster_ids.size()); ++r) {
        const int c = assign[static_cast<std::size_t>(r)];
        if (c < static_cast<int>(true_ids.size())) {
            report.mapping[cluster_ids[static_cast<std::size_t>(r)]] =
                true_ids[static_cast<std::size_t>(c)];
            matched += table(r, c);
        }
    }
    report.accuracy = 100.0 * static_cast<double>(matched) /
                      static_cast<double>(true_labels.size());
    return report;
}

double accuracy_bruteforce(const std::vector<int>& true_labels,
                           const std::vector<int>& cluster_labels) {
    if (true_labels.empty()) throw InvalidArgument("accuracy_bruteforce: empty input");
    if (true_labels.size() != cluster_labels.size()) {
        throw InvalidArgument("accuracy_bruteforce: label vectors differ in length");
    }
    const std::vector<int> true_ids = distinct_sorted(true_labels);
    const std::vector<int> cluster_ids = distinct_sorted(cluster_labels);
    if (true_ids.size() > 6 || cluster_ids.size() > 6) {
        throw InvalidArgument("accuracy_bruteforce: more than 6 distinct labels");
    }
    const Eigen::MatrixXi table = contingency(true_labels, cluster_labels, true_ids, cluster_ids);

    const int dim = static_cast<int>(std::max(true_ids.size(), cluster_ids.size()));
    std::vector<int> perm(static_cast<std::size_t>(dim));
    std::iota(perm.begin(), perm.end(), 0);
    long best = 0;
    do {
        long matched = 0;
        for (int r = 0; r < static_cast<int>(cluster_ids.size()); ++r) {
            const int c = perm[static_cast<std::size_t>(r)];
            if (c < static_cast<int>(true_ids.size())) matched += table(r, c);
        }
        best = std::max(best, matched);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return 100.0 * static_cast<double>(best) / static_cast<double>(true_labels.size());
}

}  // namespace regc
