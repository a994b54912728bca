// regclus: regularity partitioning, reduced-graph compression and
// regularity clustering from the command line.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "regc/clustering.hpp"
#include "regc/dataset.hpp"
#include "regc/errors.hpp"
#include "regc/evaluation.hpp"
#include "regc/generators.hpp"
#include "regc/harness.hpp"
#include "regc/parallel.hpp"
#include "regc/partition.hpp"
#include "regc/reduced.hpp"
#include "regc/rng.hpp"
#include "regc/serialize.hpp"

namespace {

using regc::AffinityGraph;
using regc::Dataset;

struct CommonOpts {
    std::string input;
    std::string label_col;
    std::string sigma = "median";
    double binarize_threshold = -1.0;  // < 0: off
    int threads = 0;
    std::string out;
    std::string format = "json";
};

std::optional<regc::ColumnSelector> parse_label_col(const std::string& s) {
    if (s.empty()) return std::nullopt;
    try {
        std::size_t pos = 0;
        int idx = std::stoi(s, &pos);
        if (pos == s.size()) return regc::ColumnSelector(idx);
    } catch (...) {
    }
    return regc::ColumnSelector(s);
}

regc::SigmaMode parse_sigma(const std::string& s) {
    if (s == "median") return regc::SigmaMode::median();
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos == s.size()) return regc::SigmaMode::fixed(v);
    } catch (...) {
    }
    throw regc::InvalidArgument("--sigma expects 'median' or a positive number");
}

bool looks_like_graph_file(const std::string& path) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") return true;
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return false;
    char magic[4] = {0, 0, 0, 0};
    const bool got = std::fread(magic, 1, 4, f) == 4;
    std::fclose(f);
    if (got && magic[0] == 'R' && magic[1] == 'G' && magic[2] == 'C' && magic[3] == 'M') {
        return true;
    }
    if (got && magic[0] == '{') return true;
    return false;
}

/// Loads --input as a graph (JSON/binary dump) or builds the affinity graph
/// from a CSV using the shared pipeline flags.
AffinityGraph load_input_graph(const CommonOpts& opts,
                               std::optional<Dataset>* dataset_out = nullptr) {
    if (looks_like_graph_file(opts.input)) {
        return regc::load_graph(opts.input);
    }
    Dataset ds = regc::load_csv(opts.input, parse_label_col(opts.label_col), true);
    AffinityGraph g = regc::build_affinity(ds, parse_sigma(opts.sigma), opts.threads);
    if (opts.binarize_threshold >= 0.0) g = regc::binarize(g, opts.binarize_threshold);
    if (dataset_out) *dataset_out = std::move(ds);
    return g;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content << '\n';
    } else {
        regc::write_text_file(out_path, content);
    }
}

std::vector<int> parse_block_list(const std::string& s) {
    // "3x400" or "400,400,400".
    try {
        std::vector<int> blocks;
        const auto x = s.find('x');
        if (x != std::string::npos) {
            const int count = std::stoi(s.substr(0, x));
            const int size = std::stoi(s.substr(x + 1));
            if (count < 1) throw std::invalid_argument("count");
            blocks.assign(static_cast<std::size_t>(count), size);
            return blocks;
        }
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t next = s.find(',', pos);
            if (next == std::string::npos) next = s.size();
            blocks.push_back(std::stoi(s.substr(pos, next - pos)));
            pos = next + 1;
        }
        return blocks;
    } catch (const std::exception&) {
        throw regc::InvalidArgument("--blocks expects NxSIZE or a comma list, got '" + s +
                                    "'");
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Regularity partitioning and clustering toolkit"};
    app.require_subcommand(1);
    // --h is a domain flag (minimum class size); help stays on --help.
    app.set_help_flag("--help", "Print help and exit");
    app.option_defaults()->ignore_case(false);
    auto add_sub = [&app](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->set_help_flag("--help", "Print help and exit");
        return sub;
    };

    CommonOpts opts;
    double epsilon = 0.25;
    int l = 2;
    int h = 0;
    std::string checker = "alon";
    int k = 0;
    int kappa = 5;
    std::uint64_t seed = 1;
    int max_iters = 30;

    auto add_graph_flags = [&](CLI::App* cmd) {
        cmd->add_option("--input", opts.input, "Graph file (JSON/matrix dump) or CSV")
            ->required();
        cmd->add_option("--label-col", opts.label_col, "Label column (name or index)");
        cmd->add_option("--sigma", opts.sigma, "Kernel bandwidth: 'median' or a value");
        cmd->add_option("--binarize", opts.binarize_threshold,
                        "Threshold weighted affinities into a 0/1 graph");
        cmd->add_option("--threads", opts.threads, "Worker threads (0 = auto)");
    };
    auto add_ppr_flags = [&](CLI::App* cmd) {
        cmd->add_option("--epsilon", epsilon, "Regularity parameter in (0,1)");
        cmd->add_option("--l", l, "Refinement number (>= 2)");
        cmd->add_option("--h", h, "Minimum class size (0 = max(ceil(1/eps), 2l))");
        cmd->add_option("--checker", checker, "Pair checker: alon or fk")
            ->check(CLI::IsMember({"alon", "fk"}));
        cmd->add_option("--seed", seed, "Random seed");
        cmd->add_option("--max-iters", max_iters, "Iteration cap");
    };

    // gen
    auto* gen = add_sub("gen", "Generate synthetic graphs or datasets");
    std::string kind = "planted";
    std::string blocks = "3x400";
    double p_in = 0.7, p_out = 0.05, dens = 0.5, sep = 6.0;
    int gp = 10, gq = 10, dim = 4;
    std::string labels_out;
    gen->add_option("--kind", kind, "planted | bipartite | blobs")
        ->check(CLI::IsMember({"planted", "bipartite", "blobs"}));
    gen->add_option("--blocks", blocks, "Block sizes, e.g. 3x400 or 100,200");
    gen->add_option("--p-in", p_in, "Within-block edge probability");
    gen->add_option("--p-out", p_out, "Cross-block edge probability");
    gen->add_option("--dens", dens, "Bipartite edge probability");
    gen->add_option("--p", gp, "Bipartite left part size");
    gen->add_option("--q", gq, "Bipartite right part size");
    gen->add_option("--dim", dim, "Blob feature dimension");
    gen->add_option("--sep", sep, "Blob center separation");
    gen->add_option("--seed", seed, "Random seed");
    gen->add_option("--out", opts.out, "Output path")->required();
    gen->add_option("--labels-out", labels_out, "Where to write ground-truth labels");
    gen->add_option("--format", opts.format, "Graph format: json or bin")
        ->check(CLI::IsMember({"json", "bin"}));

    // partition
    auto* part = add_sub("partition", "Run the regularity partitioning driver");
    add_graph_flags(part);
    add_ppr_flags(part);
    part->add_option("--out", opts.out, "Partition JSON output path");

    // reduce
    auto* red = add_sub("reduce", "Build the reduced graph from a partition");
    std::string partition_path;
    double density_threshold = -1.0;
    red->add_option("--input", opts.input, "Graph file or CSV")->required();
    red->add_option("--label-col", opts.label_col, "Label column (name or index)");
    red->add_option("--sigma", opts.sigma, "Kernel bandwidth: 'median' or a value");
    red->add_option("--binarize", opts.binarize_threshold, "Binarize threshold");
    red->add_option("--threads", opts.threads, "Worker threads");
    red->add_option("--partition", partition_path, "Partition JSON produced by 'partition'")
        ->required();
    red->add_option("--density-threshold", density_threshold,
                    "Zero reduced edges below this density (off by default)");
    red->add_option("--out", opts.out, "Reduced-graph JSON output path");

    // cluster
    auto* clus = add_sub("cluster", "End-to-end regularity clustering");
    add_graph_flags(clus);
    add_ppr_flags(clus);
    clus->add_option("--k", k, "Number of clusters")->required();
    clus->add_option("--kappa", kappa, "k-NN neighbours for exceptional vertices");
    clus->add_option("--out", opts.out, "Assignment JSON output path");
    std::string diagnostics_out, reduced_out;
    clus->add_option("--diagnostics", diagnostics_out, "Also write the partition JSON here");
    clus->add_option("--reduced-out", reduced_out, "Also write the reduced-graph JSON here");

    // evaluate
    auto* eval = add_sub("evaluate", "Clustering accuracy against ground truth");
    std::string pred_path, truth_path;
    eval->add_option("--pred", pred_path, "Predicted labels (JSON assignment or text)")
        ->required();
    eval->add_option("--truth", truth_path, "True labels (JSON assignment or text)")
        ->required();
    eval->add_option("--out", opts.out, "Report JSON output path");

    // grid-search
    auto* grid = add_sub("grid-search",
                         "Cross-validated (epsilon, l) search on a labeled CSV");
    add_graph_flags(grid);
    grid->add_option("--k", k, "Clusters (0 = number of distinct labels)");
    grid->add_option("--checker", checker, "Pair checker: alon or fk")
        ->check(CLI::IsMember({"alon", "fk"}));
    grid->add_option("--seed", seed, "Random seed");
    grid->add_option("--kappa", kappa, "k-NN neighbours for exceptional vertices");
    int folds = 5, eps_count = 25, l_min = 2, l_max = 7;
    double eps_min = 0.15, eps_max = 0.50;
    grid->add_option("--folds", folds, "Cross-validation folds");
    grid->add_option("--eps-count", eps_count, "Grid points for epsilon");
    grid->add_option("--eps-min", eps_min, "Smallest epsilon");
    grid->add_option("--eps-max", eps_max, "Largest epsilon");
    grid->add_option("--l-min", l_min, "Smallest refinement number");
    grid->add_option("--l-max", l_max, "Largest refinement number");
    grid->add_option("--out", opts.out, "Result JSON output path");

    // benchmark
    auto* bench = add_sub("benchmark", "Comparison table over labeled CSV datasets");
    std::vector<std::string> inputs;
    bench->add_option("--input", inputs, "Labeled CSV dataset (repeatable)")->required();
    bench->add_option("--label-col", opts.label_col, "Label column (name or index)");
    bench->add_option("--sigma", opts.sigma, "Kernel bandwidth: 'median' or a value");
    bench->add_option("--binarize", opts.binarize_threshold, "Binarize threshold");
    bench->add_option("--threads", opts.threads, "Worker threads");
    bench->add_option("--k", k, "Clusters for every dataset (0 = per-dataset labels)");
    bench->add_option("--kappa", kappa, "k-NN neighbours for exceptional vertices");
    bench->add_option("--seed", seed, "Random seed");
    bench->add_option("--folds", folds, "Cross-validation folds");
    bench->add_option("--eps-count", eps_count, "Grid points for epsilon");
    bench->add_option("--eps-min", eps_min, "Smallest epsilon");
    bench->add_option("--eps-max", eps_max, "Largest epsilon");
    bench->add_option("--l-min", l_min, "Smallest refinement number");
    bench->add_option("--l-max", l_max, "Largest refinement number");
    bench->add_option("--out", opts.out, "Output prefix (<prefix>.csv, <prefix>.json)");
    bench->add_option("--format", opts.format, "stdout format when --out is absent")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors exit with 1
    }

    auto make_spec = [&]() {
        regc::GridSearchSpec spec;
        spec.folds = folds;
        spec.epsilon_grid.resize(static_cast<std::size_t>(eps_count));
        for (int i = 0; i < eps_count; ++i) {
            spec.epsilon_grid[static_cast<std::size_t>(i)] =
                eps_count == 1 ? eps_min
                               : eps_min + (eps_max - eps_min) * i / (eps_count - 1.0);
        }
        for (int lv = l_min; lv <= l_max; ++lv) spec.l_values.push_back(lv);
        spec.validate();
        return spec;
    };
    auto make_pipe = [&]() {
        regc::PipelineConfig pipe;
        pipe.sigma = parse_sigma(opts.sigma);
        if (opts.binarize_threshold >= 0.0) pipe.binarize_threshold = opts.binarize_threshold;
        pipe.kappa = kappa;
        pipe.threads = opts.threads;
        pipe.max_iters = max_iters;
        return pipe;
    };

    if (gen->parsed()) {
        if (kind == "planted") {
            regc::PlantedPartition pp =
                regc::gen_planted_partition(parse_block_list(blocks), p_in, p_out, seed);
            regc::save_graph(pp.graph, opts.out, opts.format);
            if (!labels_out.empty()) {
                std::string text;
                for (int lab : pp.true_labels) text += std::to_string(lab) + "\n";
                regc::write_text_file(labels_out, text);
            }
        } else if (kind == "bipartite") {
            regc::save_graph(regc::gen_random_bipartite(gp, gq, dens, seed), opts.out,
                             opts.format);
        } else {
            Dataset ds = regc::make_blobs(parse_block_list(blocks), dim, sep, seed);
            std::string csv;
            for (int i = 0; i < ds.features.rows(); ++i) {
                for (int j = 0; j < ds.features.cols(); ++j) {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.6f", ds.features(i, j));
                    csv += buf;
                    csv += ',';
                }
                csv += "c" + std::to_string((*ds.labels)[static_cast<std::size_t>(i)]) + "\n";
            }
            regc::write_text_file(opts.out, csv);
        }
        return 0;
    }

    if (part->parsed()) {
        AffinityGraph g = load_input_graph(opts);
        regc::RegularityConfig cfg;
        cfg.epsilon = epsilon;
        cfg.l = l;
        cfg.h = h;
        cfg.checker = regc::checker_from_string(checker);
        cfg.seed = seed;
        cfg.max_iters = max_iters;
        cfg.threads = opts.threads;
        regc::PprResult res = regc::run_ppr(g, cfg);
        emit(opts.out, regc::partition_to_json(res, cfg));
        return 0;
    }

    if (red->parsed()) {
        AffinityGraph g = load_input_graph(opts);
        regc::PartitionFile pf =
            regc::partition_from_json(regc::read_text_file(partition_path));
        pf.partition.validate(g.size());
        std::optional<double> thr;
        if (density_threshold >= 0.0) thr = density_threshold;
        emit(opts.out, regc::reduced_to_json(regc::build_reduced(g, pf.partition, thr)));
        return 0;
    }

    if (clus->parsed()) {
        AffinityGraph g = load_input_graph(opts);
        regc::RegularityConfig cfg;
        cfg.epsilon = epsilon;
        cfg.l = l;
        cfg.h = h;
        cfg.checker = regc::checker_from_string(checker);
        cfg.seed = seed;
        cfg.max_iters = max_iters;
        cfg.threads = opts.threads;
        regc::RegularityClusterResult res = regc::regularity_cluster(g, k, cfg, kappa);
        emit(opts.out, regc::assignment_to_json(res.assignment));
        if (!diagnostics_out.empty()) {
            regc::PprResult ppr{res.partition, res.trace};
            regc::write_text_file(diagnostics_out, regc::partition_to_json(ppr, cfg));
        }
        if (!reduced_out.empty()) {
            regc::write_text_file(reduced_out, regc::reduced_to_json(res.reduced));
        }
        return 0;
    }

    if (eval->parsed()) {
        const std::vector<int> pred = regc::load_labels(pred_path);
        const std::vector<int> truth = regc::load_labels(truth_path);
        emit(opts.out, regc::accuracy_to_json(regc::accuracy(truth, pred)));
        return 0;
    }

    // The labeled verbs default to the last column as the label column.
    auto labeled_col = [&]() {
        return parse_label_col(opts.label_col.empty() ? "-1" : opts.label_col);
    };

    if (grid->parsed()) {
        Dataset ds = regc::load_csv(opts.input, labeled_col(), true);
        if (!ds.labels) throw regc::DataError("grid-search: --label-col is required");
        const regc::GridSearchSpec spec = make_spec();
        const regc::PipelineConfig pipe = make_pipe();
        int use_k = k;
        if (use_k == 0) {
            std::vector<int> d(*ds.labels);
            std::sort(d.begin(), d.end());
            d.erase(std::unique(d.begin(), d.end()), d.end());
            use_k = static_cast<int>(d.size());
        }
        regc::GridSearchResult res = regc::grid_search(
            ds, use_k, spec, regc::checker_from_string(checker), seed, pipe);
        nlohmann::ordered_json j;
        j["best_epsilon"] = res.best_epsilon;
        j["best_l"] = res.best_l;
        j["validation_accuracy"] = res.validation_accuracy;
        j["reported_accuracy"] = res.reported_accuracy;
        j["k"] = use_k;
        j["checker"] = checker;
        j["seed"] = seed;
        j["folds"] = spec.folds;
        j["protocol"] =
            "parameters learned by mean validation-fold accuracy; reported accuracy is "
            "the mean over each fold's complement at the learned parameters";
        nlohmann::ordered_json cells = nlohmann::ordered_json::array();
        for (const auto& c : res.cells) {
            cells.push_back({{"epsilon", c.epsilon},
                             {"l", c.l},
                             {"mean_accuracy", c.mean_accuracy},
                             {"failed_folds", c.failed_folds}});
        }
        j["cells"] = std::move(cells);
        emit(opts.out, j.dump(2));
        return 0;
    }

    if (bench->parsed()) {
        const regc::GridSearchSpec spec = make_spec();
        const regc::PipelineConfig pipe = make_pipe();
        std::optional<int> k_override;
        if (k > 0) k_override = k;
        std::vector<regc::BenchmarkRow> rows;
        for (const auto& path : inputs) {
            Dataset ds = regc::load_csv(path, labeled_col(), true);
            const auto slash = path.find_last_of('/');
            ds.name = slash == std::string::npos ? path : path.substr(slash + 1);
            rows.push_back(regc::benchmark_dataset(ds, k_override, spec, seed, pipe));
        }
        const std::string csv = regc::benchmark_csv(rows);
        const std::string json = regc::benchmark_json(rows, spec, seed, pipe);
        if (opts.out.empty()) {
            std::cout << (opts.format == "json" ? json : csv);
        } else {
            regc::write_text_file(opts.out + ".csv", csv);
            regc::write_text_file(opts.out + ".json", json);
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const regc::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const regc::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const regc::NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
