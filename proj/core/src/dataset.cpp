#include "regc/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "regc/errors.hpp"
#include "regc/parallel.hpp"
#include "regc/rng.hpp"

namespace regc {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    // Strip surrounding quotes (quoted headers are common in UCI exports).
    if (e - b >= 2 && s[b] == '"' && s[e - 1] == '"') {
        ++b;
        --e;
    }
    return s.substr(b, e - b);
}

std::vector<std::string> tokenize(const std::string& line, char delim) {
    std::vector<std::string> out;
    if (delim != ' ') {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, delim)) out.push_back(trim(cell));
        if (!line.empty() && line.back() == delim) out.emplace_back();
    } else {
        std::stringstream ss(line);
        std::string cell;
        while (ss >> cell) out.push_back(cell);
    }
    return out;
}

bool parse_number(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    char* end = nullptr;
    out = std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size();
}

bool is_missing(const std::string& cell) {
    if (cell.empty() || cell == "?") return true;
    std::string low(cell);
    std::transform(low.begin(), low.end(), low.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return low == "na" || low == "nan";
}

}  // namespace

Dataset load_csv(const std::string& path, std::optional<ColumnSelector> label_column,
                 bool standardize) {
    std::ifstream in(path);
    if (!in) throw DataError("load_csv: cannot open " + path);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!trim(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw DataError("load_csv: " + path + " is empty");

    // Delimiter: semicolon, comma or whitespace, in that probe order.
    char delim = ' ';
    if (lines.front().find(';') != std::string::npos) delim = ';';
    else if (lines.front().find(',') != std::string::npos) delim = ',';
    std::vector<std::vector<std::string>> rows;
    rows.reserve(lines.size());
    for (const auto& l : lines) rows.push_back(tokenize(l, delim));

    const std::size_t width = rows.front().size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != width) {
            throw DataError("load_csv: ragged row " + std::to_string(r + 1) + " in " + path);
        }
    }

    // Header detection: some first-row cell is non-numeric while the same
    // cell of the second row is numeric. An all-text column (categorical
    // labels) does not trigger this.
    bool header = false;
    if (rows.size() > 1) {
        for (std::size_t c = 0; c < width; ++c) {
            double tmp;
            if (!parse_number(rows[0][c], tmp) && !is_missing(rows[0][c]) &&
                parse_number(rows[1][c], tmp)) {
                header = true;
                break;
            }
        }
    }
    std::vector<std::string> header_names;
    if (header) {
        header_names = rows.front();
        rows.erase(rows.begin());
        if (rows.empty()) throw DataError("load_csv: no data rows in " + path);
    }

    // Resolve the label column.
    int label_idx = -1;
    if (label_column) {
        if (std::holds_alternative<int>(*label_column)) {
            label_idx = std::get<int>(*label_column);
            if (label_idx < 0) label_idx = static_cast<int>(width) + label_idx;
        } else {
            const std::string& name = std::get<std::string>(*label_column);
            auto it = std::find(header_names.begin(), header_names.end(), name);
            if (it == header_names.end()) {
                throw DataError("load_csv: no column named '" + name + "' in " + path);
            }
            label_idx = static_cast<int>(it - header_names.begin());
        }
        if (label_idx < 0 || label_idx >= static_cast<int>(width)) {
            throw DataError("load_csv: label column out of range");
        }
    }

    const int d = static_cast<int>(width) - (label_idx >= 0 ? 1 : 0);
    if (d < 1) throw DataError("load_csv: no feature columns");

    Dataset ds;
    ds.name = path;
    std::vector<std::vector<double>> feats;
    std::vector<int> labels;
    std::map<std::string, int> label_codes;  // coded by first appearance

    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::vector<double> feat_row;
        feat_row.reserve(static_cast<std::size_t>(d));
        bool missing = false;
        std::string label_cell;
        for (std::size_t c = 0; c < width; ++c) {
            if (static_cast<int>(c) == label_idx) {
                label_cell = rows[r][c];
                if (is_missing(label_cell)) missing = true;
                continue;
            }
            if (is_missing(rows[r][c])) {
                missing = true;
                continue;
            }
            double v;
            if (!parse_number(rows[r][c], v)) {
                throw DataError("load_csv: non-numeric feature cell '" + rows[r][c] +
                                "' at row " + std::to_string(r + 1));
            }
            if (!std::isfinite(v)) missing = true;
            feat_row.push_back(v);
        }
        if (missing) {
            ++ds.rows_dropped;
            continue;
        }
        feats.push_back(std::move(feat_row));
        if (label_idx >= 0) {
            auto it = label_codes.emplace(label_cell,
                                          static_cast<int>(label_codes.size())).first;
            labels.push_back(it->second);
        }
    }
    if (feats.empty()) throw DataError("load_csv: no usable rows after cleaning " + path);

    const int n = static_cast<int>(feats.size());
    ds.features.resize(n, d);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
            ds.features(i, j) = feats[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    if (label_idx >= 0) ds.labels = std::move(labels);

    if (standardize) {
        for (int j = 0; j < d; ++j) {
            const double mean = ds.features.col(j).mean();
            const double var =
                (ds.features.col(j).array() - mean).square().sum() / n;
            const double sd = std::sqrt(var);
            if (sd > 0.0) {
                ds.features.col(j) = (ds.features.col(j).array() - mean) / sd;
            } else {
                ds.features.col(j).setZero();  // constant column
            }
        }
    }
    return ds;
}

namespace {

Eigen::MatrixXd pairwise_sq_distances(const Eigen::MatrixXd& x, int threads) {
    const int n = static_cast<int>(x.rows());
    Eigen::VectorXd sq = x.rowwise().squaredNorm();
    Eigen::MatrixXd d2(n, n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const auto ii = static_cast<Eigen::Index>(i);
        d2.row(ii) = (sq(ii) + sq.array() - 2.0 * (x * x.row(ii).transpose()).array())
                         .cwiseMax(0.0)
                         .transpose();
        d2(ii, ii) = 0.0;
    }, threads);
    return d2;
}

}  // namespace

namespace {

double sigma_from_distances(const Eigen::MatrixXd& d2, SigmaMode sigma_mode) {
    if (!sigma_mode.median_heuristic) {
        if (!(sigma_mode.fixed_value > 0.0)) {
            throw InvalidArgument("build_affinity: fixed sigma must be positive");
        }
        return sigma_mode.fixed_value;
    }
    const int n = static_cast<int>(d2.rows());
    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) dists.push_back(std::sqrt(d2(i, j)));
    }
    auto mid = dists.begin() + static_cast<std::ptrdiff_t>(dists.size() / 2);
    std::nth_element(dists.begin(), mid, dists.end());
    const double median = *mid;
    if (!(median > 0.0)) {
        throw NumericError(
            "build_affinity: median pairwise distance is zero (identical points); "
            "supply a fixed sigma");
    }
    return median;
}

}  // namespace

double resolve_sigma(const Dataset& ds, SigmaMode sigma_mode) {
    if (!sigma_mode.median_heuristic) {
        return sigma_from_distances(Eigen::MatrixXd(), sigma_mode);
    }
    if (ds.features.rows() < 2) {
        throw InvalidArgument("build_affinity: need at least two points");
    }
    return sigma_from_distances(pairwise_sq_distances(ds.features, 0), sigma_mode);
}

AffinityGraph build_affinity(const Dataset& ds, SigmaMode sigma_mode, int threads) {
    const int n = static_cast<int>(ds.features.rows());
    if (n < 2) throw InvalidArgument("build_affinity: need at least two points");

    Eigen::MatrixXd d2 = pairwise_sq_distances(ds.features, threads);
    const double sigma = sigma_from_distances(d2, sigma_mode);
    Eigen::MatrixXd w = (-d2 / (2.0 * sigma * sigma)).array().exp();
    // Exact symmetry and zero diagonal, independent of evaluation order.
    for (int i = 0; i < n; ++i) {
        w(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) w(j, i) = w(i, j);
    }
    return AffinityGraph(std::move(w), AffinityGraph::Mode::weighted);
}

AffinityGraph binarize(const AffinityGraph& g, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw InvalidArgument("binarize: threshold must be in [0,1]");
    }
    const int n = g.size();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (g.weight(i, j) >= threshold) {
                w(i, j) = 1.0;
                w(j, i) = 1.0;
            }
        }
    }
    return AffinityGraph(std::move(w), AffinityGraph::Mode::binary);
}

Dataset make_blobs(const std::vector<int>& block_sizes, int dim, double separation,
                   std::uint64_t seed) {
    if (block_sizes.empty() || dim < 1) {
        throw InvalidArgument("make_blobs: need blocks and dim >= 1");
    }
    int n = 0;
    for (int s : block_sizes) {
        if (s < 1) throw InvalidArgument("make_blobs: empty block");
        n += s;
    }
    Dataset ds;
    ds.name = "blobs";
    ds.features.resize(n, dim);
    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(n));
    Rng rng(seed);
    int row = 0;
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
        for (int i = 0; i < block_sizes[b]; ++i, ++row) {
            for (int j = 0; j < dim; ++j) {
                ds.features(row, j) = separation * static_cast<double>(b) + rng.next_gaussian();
            }
            labels.push_back(static_cast<int>(b));
        }
    }
    ds.labels = std::move(labels);
    return ds;
}

}  // namespace regc
