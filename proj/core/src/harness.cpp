#include "regc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "regc/errors.hpp"
#include "regc/evaluation.hpp"
#include "regc/parallel.hpp"
#include "regc/rng.hpp"

namespace regc {

GridSearchSpec GridSearchSpec::defaults() {
    GridSearchSpec s;
    s.epsilon_grid.resize(25);
    for (int i = 0; i < 25; ++i) {
        s.epsilon_grid[static_cast<std::size_t>(i)] = 0.15 + (0.50 - 0.15) * i / 24.0;
    }
    s.l_values = {2, 3, 4, 5, 6, 7};
    s.folds = 5;
    return s;
}

void GridSearchSpec::validate() const {
    if (epsilon_grid.empty() || l_values.empty()) {
        throw InvalidArgument("GridSearchSpec: empty grid");
    }
    for (double e : epsilon_grid) {
        if (!(e > 0.0 && e < 1.0)) throw InvalidArgument("GridSearchSpec: epsilon outside (0,1)");
    }
    for (int l : l_values) {
        if (l < 2) throw InvalidArgument("GridSearchSpec: l must be >= 2");
    }
    if (folds < 2) throw InvalidArgument("GridSearchSpec: need at least 2 folds");
}

Dataset subset_rows(const Dataset& ds, const std::vector<int>& rows) {
    Dataset out;
    out.name = ds.name;
    out.features.resize(static_cast<Eigen::Index>(rows.size()), ds.features.cols());
    if (ds.labels) out.labels.emplace();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.features.row(static_cast<Eigen::Index>(i)) = ds.features.row(rows[i]);
        if (ds.labels) out.labels->push_back((*ds.labels)[static_cast<std::size_t>(rows[i])]);
    }
    return out;
}

std::vector<std::vector<int>> make_folds(int n, int folds, std::uint64_t seed) {
    if (folds < 2 || folds > n) throw InvalidArgument("make_folds: need 2 <= folds <= n");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(mix_seed(seed, 0x666f6c64ULL));  // "fold"
    rng.shuffle(order);
    std::vector<std::vector<int>> out(static_cast<std::size_t>(folds));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i % folds)].push_back(order[static_cast<std::size_t>(i)]);
    }
    for (auto& fold : out) std::sort(fold.begin(), fold.end());
    return out;
}

namespace {

AffinityGraph pipeline_graph(const Dataset& ds, const PipelineConfig& pipe) {
    AffinityGraph g = build_affinity(ds, pipe.sigma, pipe.threads);
    if (pipe.binarize_threshold) return binarize(g, *pipe.binarize_threshold);
    return g;
}

/// Clusters one row subset with the given parameters and scores it against
/// the subset's labels. Throws on pipeline failure.
double score_subset(const Dataset& ds, const std::vector<int>& rows, int k,
                    double epsilon, int l, CheckerKind checker, std::uint64_t seed,
                    const PipelineConfig& pipe) {
    Dataset sub = subset_rows(ds, rows);
    AffinityGraph g = pipeline_graph(sub, pipe);
    RegularityConfig cfg;
    cfg.epsilon = epsilon;
    cfg.l = l;
    cfg.checker = checker;
    cfg.seed = seed;
    cfg.max_iters = pipe.max_iters;
    cfg.threads = 1;  // outer jobs already run in parallel
    RegularityClusterResult res = regularity_cluster(g, k, cfg, pipe.kappa);
    return accuracy(*sub.labels, res.assignment.labels).accuracy;
}

}  // namespace

GridSearchResult grid_search(const Dataset& ds, int k, const GridSearchSpec& spec,
                             CheckerKind checker, std::uint64_t seed,
                             const PipelineConfig& pipe) {
    spec.validate();
    if (!ds.labels) throw InvalidArgument("grid_search: dataset has no labels");
    const int n = static_cast<int>(ds.features.rows());
    if (n < spec.folds) throw InvalidArgument("grid_search: fewer rows than folds");
    if (k < 2) throw InvalidArgument("grid_search: k must be >= 2");

    const auto folds = make_folds(n, spec.folds, seed);
    const std::size_t n_cells = spec.epsilon_grid.size() * spec.l_values.size();

    struct Job { std::size_t cell; int fold; };
    std::vector<Job> jobs;
    jobs.reserve(n_cells * static_cast<std::size_t>(spec.folds));
    for (std::size_t c = 0; c < n_cells; ++c) {
        for (int f = 0; f < spec.folds; ++f) jobs.push_back({c, f});
    }

    std::vector<double> scores(jobs.size(), 0.0);
    std::vector<char> failed(jobs.size(), 0);
    parallel_for(jobs.size(), [&](std::size_t i) {
        const auto [cell, fold] = jobs[i];
        const double eps = spec.epsilon_grid[cell / spec.l_values.size()];
        const int l = spec.l_values[cell % spec.l_values.size()];
        try {
            scores[i] = score_subset(ds, folds[static_cast<std::size_t>(fold)], k, eps, l,
                                     checker,
                                     mix_seed(seed, 0x63656c6cULL, cell,
                                              static_cast<std::uint64_t>(fold)),
                                     pipe);
        } catch (const Error&) {
            failed[i] = 1;  // cell unusable on this fold; scored as 0
        }
    }, pipe.threads);

    GridSearchResult res;
    res.cells.reserve(n_cells);
    std::size_t best_cell = 0;
    double best_score = -1.0;
    for (std::size_t c = 0; c < n_cells; ++c) {
        GridCell cell;
        cell.epsilon = spec.epsilon_grid[c / spec.l_values.size()];
        cell.l = spec.l_values[c % spec.l_values.size()];
        double sum = 0.0;
        for (int f = 0; f < spec.folds; ++f) {
            const std::size_t i = c * static_cast<std::size_t>(spec.folds) +
                                  static_cast<std::size_t>(f);
            sum += scores[i];
            cell.failed_folds += failed[i];
        }
        cell.mean_accuracy = sum / spec.folds;
        // Strict comparison keeps the first best: smaller epsilon, then l.
        if (cell.mean_accuracy > best_score) {
            best_score = cell.mean_accuracy;
            best_cell = c;
        }
        res.cells.push_back(cell);
    }
    res.best_epsilon = res.cells[best_cell].epsilon;
    res.best_l = res.cells[best_cell].l;
    res.validation_accuracy = res.cells[best_cell].mean_accuracy;

    // Report: mean accuracy over each fold's complement at the learned cell.
    std::vector<double> held_out(static_cast<std::size_t>(spec.folds), 0.0);
    parallel_for(static_cast<std::size_t>(spec.folds), [&](std::size_t f) {
        std::vector<int> rest;
        rest.reserve(static_cast<std::size_t>(n));
        for (std::size_t other = 0; other < folds.size(); ++other) {
            if (other == f) continue;
            rest.insert(rest.end(), folds[other].begin(), folds[other].end());
        }
        std::sort(rest.begin(), rest.end());
        try {
            held_out[f] = score_subset(ds, rest, k, res.best_epsilon, res.best_l, checker,
                                       mix_seed(seed, 0x7265737400ULL, best_cell, f), pipe);
        } catch (const Error&) {
            held_out[f] = 0.0;
        }
    }, pipe.threads);
    res.reported_accuracy =
        std::accumulate(held_out.begin(), held_out.end(), 0.0) / spec.folds;
    return res;
}

namespace {

int default_k(const Dataset& ds) {
    if (!ds.labels) throw InvalidArgument("benchmark: dataset has no labels");
    std::vector<int> d(*ds.labels);
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return static_cast<int>(d.size());
}

std::string format_accuracy(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

BenchmarkRow benchmark_dataset(const Dataset& ds, std::optional<int> k_override,
                               const GridSearchSpec& spec, std::uint64_t seed,
                               const PipelineConfig& pipe) {
    BenchmarkRow row;
    row.dataset = ds.name;
    row.features = static_cast<int>(ds.features.cols());
    row.n = static_cast<int>(ds.features.rows());
    const double nan = std::nan("");
    row.regular_alon = row.regular_fk = row.spectral_knn = row.spectral_full =
        row.kmeans_acc = nan;
    try {
        row.k = k_override ? *k_override : default_k(ds);
        row.knn_neighbors = std::max(
            1, static_cast<int>(std::ceil(std::log(static_cast<double>(row.n)))));

        const GridSearchResult alon =
            grid_search(ds, row.k, spec, CheckerKind::alon, seed, pipe);
        row.regular_alon = alon.reported_accuracy;
        const GridSearchResult fk =
            grid_search(ds, row.k, spec, CheckerKind::fk, seed, pipe);
        row.regular_fk = fk.reported_accuracy;

        // Compression column: tuned full-data run with the alon parameters.
        {
            AffinityGraph g = pipeline_graph(ds, pipe);
            RegularityConfig cfg;
            cfg.epsilon = alon.best_epsilon;
            cfg.l = alon.best_l;
            cfg.checker = CheckerKind::alon;
            cfg.seed = mix_seed(seed, 0x636f6d70ULL);
            cfg.max_iters = pipe.max_iters;
            cfg.threads = pipe.threads;
            RegularityClusterResult full = regularity_cluster(g, row.k, cfg, pipe.kappa);
            row.compression_k = full.reduced.k;
            if (ds.labels) {
                // Full-data accuracies of the baselines share this graph.
                ClusterAssignment s2 = spectral_njw(
                    g.weights(), row.k, mix_seed(seed, 0x7330ULL));
                row.spectral_full = accuracy(*ds.labels, s2.labels).accuracy;
                Eigen::MatrixXd knn = knn_affinity(g.weights(), row.knn_neighbors);
                ClusterAssignment s1 =
                    spectral_njw(knn, row.k, mix_seed(seed, 0x7331ULL));
                row.spectral_knn = accuracy(*ds.labels, s1.labels).accuracy;
            }
        }

        ClusterAssignment km =
            kmeans(ds.features, row.k, mix_seed(seed, 0x6b6dULL));
        row.kmeans_acc = accuracy(*ds.labels, km.labels).accuracy;
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows) {
    std::ostringstream out;
    out << "dataset,features,compression,regular1,regular2,spect1,spect2,kmeans\n";
    for (const auto& r : rows) {
        out << r.dataset << ',' << r.features << ',' << r.n << '-' << r.compression_k
            << ',' << format_accuracy(r.regular_alon) << ','
            << format_accuracy(r.regular_fk) << ',' << format_accuracy(r.spectral_knn)
            << ',' << format_accuracy(r.spectral_full) << ','
            << format_accuracy(r.kmeans_acc) << '\n';
    }
    return out.str();
}

std::string benchmark_json(const std::vector<BenchmarkRow>& rows,
                           const GridSearchSpec& spec, std::uint64_t seed,
                           const PipelineConfig& pipe) {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["folds"] = spec.folds;
    j["epsilon_grid"] = spec.epsilon_grid;
    j["l_values"] = spec.l_values;
    j["sigma"] = pipe.sigma.median_heuristic ? nlohmann::ordered_json("median")
                                             : nlohmann::ordered_json(pipe.sigma.fixed_value);
    if (pipe.binarize_threshold) j["binarize"] = *pipe.binarize_threshold;
    j["graph_mode"] = pipe.binarize_threshold ? "binary" : "weighted";
    j["kappa"] = pipe.kappa;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["dataset"] = r.dataset;
        o["features"] = r.features;
        o["n"] = r.n;
        o["compression"] = std::to_string(r.n) + "-" + std::to_string(r.compression_k);
        o["k"] = r.k;
        o["knn_neighbors"] = r.knn_neighbors;
        auto acc = [](double v) {
            return std::isnan(v) ? nlohmann::ordered_json() : nlohmann::ordered_json(v);
        };
        o["regular1"] = acc(r.regular_alon);
        o["regular2"] = acc(r.regular_fk);
        o["spect1"] = acc(r.spectral_knn);
        o["spect2"] = acc(r.spectral_full);
        o["kmeans"] = acc(r.kmeans_acc);
        if (!r.error.empty()) o["error"] = r.error;
        arr.push_back(std::move(o));
    }
    j["rows"] = std::move(arr);
    return j.dump(2);
}

}  // namespace regc
