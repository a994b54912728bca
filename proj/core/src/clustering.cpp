#include "regc/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "regc/errors.hpp"
#include "regc/rng.hpp"

namespace regc {

namespace {

double squared_distance(const Eigen::MatrixXd& points, int row,
                        const Eigen::MatrixXd& centers, int center) {
    return (points.row(row) - centers.row(center)).squaredNorm();
}

/// k-means++ seeding: first center uniform, later centers proportional to
/// squared distance from the nearest chosen center.
Eigen::MatrixXd kmeanspp_init(const Eigen::MatrixXd& points, int k, Rng& rng) {
    const int n = static_cast<int>(points.rows());
    Eigen::MatrixXd centers(k, points.cols());
    std::vector<double> dist2(static_cast<std::size_t>(n),
                              std::numeric_limits<double>::infinity());
    int first = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    centers.row(0) = points.row(first);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = squared_distance(points, i, centers, c - 1);
            auto& best = dist2[static_cast<std::size_t>(i)];
            if (d < best) best = d;
            total += best;
        }
        int chosen = 0;
        if (total > 0.0) {
            const double target = rng.next_unit() * total;
            double acc = 0.0;
            chosen = n - 1;
            for (int i = 0; i < n; ++i) {
                acc += dist2[static_cast<std::size_t>(i)];
                if (acc > target) { chosen = i; break; }
            }
        } else {
            // All remaining points coincide with chosen centers.
            chosen = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        }
        centers.row(c) = points.row(chosen);
    }
    return centers;
}

}  // namespace

KMeansResult kmeans_lloyd(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                          int max_iter) {
    const int n = static_cast<int>(points.rows());
    if (k < 1) throw InvalidArgument("kmeans: k must be >= 1");
    if (k > n) throw InvalidArgument("kmeans: k exceeds the number of points");
    if (max_iter < 1) throw InvalidArgument("kmeans: max_iter must be >= 1");

    Rng rng(mix_seed(seed, 0x6b6d6570ULL));
    KMeansResult res;
    res.centers = kmeanspp_init(points, k, rng);
    res.labels.assign(static_cast<std::size_t>(n), 0);

    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int iter = 0; iter < max_iter; ++iter) {
        // Assignment step.
        bool changed = iter == 0;
        double inertia = 0.0;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = squared_distance(points, i, res.centers, 0);
            for (int c = 1; c < k; ++c) {
                const double d = squared_distance(points, i, res.centers, c);
                if (d < best_d) { best_d = d; best = c; }
            }
            if (res.labels[static_cast<std::size_t>(i)] != best) {
                res.labels[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
            inertia += best_d;
        }
        res.inertia_history.push_back(inertia);
        res.iterations = iter + 1;
        if (!changed && iter > 0) break;

        // Update step.
        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) {
            sums.row(res.labels[static_cast<std::size_t>(i)]) += points.row(i);
            counts[static_cast<std::size_t>(res.labels[static_cast<std::size_t>(i)])] += 1;
        }
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                res.centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
            } else {
                // Re-seed an empty cluster from the farthest point.
                int far = 0;
                double far_d = -1.0;
                for (int i = 0; i < n; ++i) {
                    const double d = squared_distance(
                        points, i, res.centers, res.labels[static_cast<std::size_t>(i)]);
                    if (d > far_d) { far_d = d; far = i; }
                }
                res.centers.row(c) = points.row(far);
            }
        }
    }
    return res;
}

ClusterAssignment kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                         int max_iter) {
    KMeansResult r = kmeans_lloyd(points, k, seed, max_iter);
    ClusterAssignment a;
    a.labels = std::move(r.labels);
    a.k_clusters = k;
    a.method = "kmeans";
    return a;
}

ClusterAssignment spectral_njw(const Eigen::MatrixXd& affinity, int k,
                               std::uint64_t seed) {
    const int n = static_cast<int>(affinity.rows());
    if (n == 0 || affinity.cols() != n) {
        throw InvalidArgument("spectral_njw: affinity must be square and nonempty");
    }
    if (k < 1 || k > n) throw InvalidArgument("spectral_njw: need 1 <= k <= n");
    if (affinity.minCoeff() < 0.0) {
        throw InvalidArgument("spectral_njw: affinity must be nonnegative");
    }
    if (!affinity.isApprox(affinity.transpose(), 1e-12)) {
        throw InvalidArgument("spectral_njw: affinity must be symmetric");
    }

    // Normalized affinity D^-1/2 A D^-1/2; zero-degree rows stay zero.
    Eigen::VectorXd deg = affinity.rowwise().sum();
    Eigen::VectorXd dinv = deg.unaryExpr(
        [](double d) { return d > 0.0 ? 1.0 / std::sqrt(d) : 0.0; });
    Eigen::MatrixXd norm = dinv.asDiagonal() * affinity * dinv.asDiagonal();
    // Symmetrize away the dust from the two diagonal scalings.
    norm = 0.5 * (norm + norm.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(norm);
    if (solver.info() != Eigen::Success) {
        throw NumericError("spectral_njw: eigendecomposition failed");
    }
    // Eigenvalues ascend; the embedding uses the top k eigenvectors.
    Eigen::MatrixXd embed = solver.eigenvectors().rightCols(k);

    for (int i = 0; i < n; ++i) {
        const double len = embed.row(i).norm();
        if (len > 0.0) embed.row(i) /= len;
    }

    KMeansResult km = kmeans_lloyd(embed, k, mix_seed(seed, 0x6e6a77ULL));
    ClusterAssignment a;
    a.labels = std::move(km.labels);
    a.k_clusters = k;
    a.method = "spectral";
    return a;
}

std::vector<int> project_labels(const EquitablePartition& p,
                                const ClusterAssignment& reduced_labels) {
    if (static_cast<int>(reduced_labels.labels.size()) != p.k()) {
        throw InvalidArgument("project_labels: one reduced label per class required");
    }
    std::vector<int> out(static_cast<std::size_t>(p.total_vertices()), -1);
    for (int c = 0; c < p.k(); ++c) {
        for (int v : p.classes[static_cast<std::size_t>(c)]) {
            out[static_cast<std::size_t>(v)] = reduced_labels.labels[static_cast<std::size_t>(c)];
        }
    }
    return out;
}

std::vector<int> assign_exceptional(const AffinityGraph& g, std::vector<int> labels,
                                    const VertexSet& exceptional, int kappa) {
    if (kappa < 1) throw InvalidArgument("assign_exceptional: kappa must be >= 1");
    if (static_cast<int>(labels.size()) != g.size()) {
        throw InvalidArgument("assign_exceptional: label vector size mismatch");
    }
    std::vector<int> labeled;
    for (int v = 0; v < g.size(); ++v) {
        if (!exceptional.contains(v)) {
            if (labels[static_cast<std::size_t>(v)] < 0) {
                throw InvalidArgument("assign_exceptional: non-exceptional vertex unlabeled");
            }
            labeled.push_back(v);
        }
    }
    if (labeled.empty()) throw InvalidArgument("assign_exceptional: no labeled vertices");

    std::vector<int> out = labels;
    for (int v : exceptional) {
        // kappa strongest labeled neighbors (affinity desc, index asc). A tie
        // at the kappa-th affinity admits the whole tied group, so 0/1 graphs
        // vote over all actual neighbors instead of an index-biased sample.
        std::vector<int> order = labeled;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double wa = g.weight(v, a);
            const double wb = g.weight(v, b);
            if (wa != wb) return wa > wb;
            return a < b;
        });
        std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(kappa),
                                                 order.size());
        const double boundary = g.weight(v, order[take - 1]);
        if (boundary > 0.0) {
            while (take < order.size() && g.weight(v, order[take]) == boundary) ++take;
        }
        // Majority vote; ties by summed affinity, then lower label id.
        std::map<int, std::pair<int, double>> votes;  // label -> (count, mass)
        for (std::size_t i = 0; i < take; ++i) {
            auto& entry = votes[labels[static_cast<std::size_t>(order[i])]];
            entry.first += 1;
            entry.second += g.weight(v, order[i]);
        }
        int best_label = -1;
        std::pair<int, double> best{-1, -1.0};
        for (const auto& [label, score] : votes) {
            if (score.first > best.first ||
                (score.first == best.first && score.second > best.second)) {
                best = score;
                best_label = label;
            }
        }
        out[static_cast<std::size_t>(v)] = best_label;
    }
    return out;
}

RegularityClusterResult regularity_cluster(const AffinityGraph& g, int k,
                                           const RegularityConfig& cfg, int kappa) {
    if (k < 2) throw InvalidArgument("regularity_cluster: k must be >= 2");
    PprResult ppr = run_ppr(g, cfg);
    if (ppr.partition.k() < k) {
        throw NumericError(
            "regularity_cluster: reduced graph has fewer vertices than requested "
            "clusters; use a smaller h or a larger l");
    }
    ReducedGraph reduced = build_reduced(g, ppr.partition);
    // Densities are similarities already; no kernel is re-applied.
    ClusterAssignment reduced_assign =
        spectral_njw(reduced.weights, k, mix_seed(cfg.seed, 0x7370656341ULL));
    std::vector<int> labels = project_labels(ppr.partition, reduced_assign);
    labels = assign_exceptional(g, std::move(labels), ppr.partition.exceptional, kappa);

    RegularityClusterResult res;
    res.assignment.labels = std::move(labels);
    res.assignment.k_clusters = k;
    res.assignment.method = cfg.checker == CheckerKind::alon ? "regularity_alon"
                                                             : "regularity_fk";
    res.trace = std::move(ppr.trace);
    res.reduced = std::move(reduced);
    res.partition = std::move(ppr.partition);
    return res;
}

Eigen::MatrixXd knn_affinity(const Eigen::MatrixXd& affinity, int neighbors) {
    const int n = static_cast<int>(affinity.rows());
    if (neighbors < 1) throw InvalidArgument("knn_affinity: neighbors must be >= 1");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> order;
        order.reserve(static_cast<std::size_t>(n) - 1);
        for (int j = 0; j < n; ++j) {
            if (j != i) order.push_back(j);
        }
        const int take = std::min<int>(neighbors, static_cast<int>(order.size()));
        std::partial_sort(order.begin(), order.begin() + take, order.end(),
                          [&](int a, int b) {
                              if (affinity(i, a) != affinity(i, b)) {
                                  return affinity(i, a) > affinity(i, b);
                              }
                              return a < b;
                          });
        for (int t = 0; t < take; ++t) {
            const int j = order[static_cast<std::size_t>(t)];
            out(i, j) = affinity(i, j);
            out(j, i) = affinity(i, j);
        }
    }
    return out;
}

}  // namespace regc
