#include "regc/graph.hpp"

#include <algorithm>
#include <cmath>

#include "regc/errors.hpp"

namespace regc {

VertexSet::VertexSet(std::vector<int> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
        throw InvalidArgument("VertexSet: duplicate vertex id");
    }
    if (!ids_.empty() && ids_.front() < 0) {
        throw InvalidArgument("VertexSet: negative vertex id");
    }
}

VertexSet VertexSet::range(int lo, int hi) {
    if (lo > hi) throw InvalidArgument("VertexSet::range: lo > hi");
    std::vector<int> ids;
    ids.reserve(static_cast<std::size_t>(hi - lo));
    for (int v = lo; v < hi; ++v) ids.push_back(v);
    return VertexSet(std::move(ids));
}

bool VertexSet::contains(int v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

bool VertexSet::disjoint_from(const VertexSet& other) const {
    // Both sorted; single merge pass.
    std::size_t i = 0, j = 0;
    while (i < ids_.size() && j < other.ids_.size()) {
        if (ids_[i] == other.ids_[j]) return false;
        if (ids_[i] < other.ids_[j]) ++i; else ++j;
    }
    return true;
}

bool VertexSet::valid_for(int n) const {
    return ids_.empty() || (ids_.front() >= 0 && ids_.back() < n);
}

AffinityGraph::AffinityGraph(Eigen::MatrixXd weights, Mode mode)
    : weights_(std::move(weights)), mode_(mode) {
    const auto n = weights_.rows();
    if (n != weights_.cols()) {
        throw InvalidArgument("AffinityGraph: weight matrix must be square");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (weights_(i, i) != 0.0) {
            throw InvalidArgument("AffinityGraph: diagonal must be zero");
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double w = weights_(i, j);
            if (!(w >= 0.0 && w <= 1.0) || !std::isfinite(w)) {
                throw InvalidArgument("AffinityGraph: weight outside [0,1]");
            }
            if (w != weights_(j, i)) {
                throw InvalidArgument("AffinityGraph: weights not symmetric");
            }
            if (mode_ == Mode::binary && w != 0.0 && w != 1.0) {
                throw InvalidArgument("AffinityGraph: binary mode requires 0/1 weights");
            }
        }
    }
}

double AffinityGraph::edge_weight(const VertexSet& a, const VertexSet& b) const {
    double sum = 0.0;
    for (int i : a) {
        const auto row = weights_.row(i);
        for (int j : b) sum += row(j);
    }
    return sum;
}

Eigen::MatrixXd AffinityGraph::block(const VertexSet& a, const VertexSet& b) const {
    Eigen::MatrixXd out(a.size(), b.size());
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < b.size(); ++j) {
            out(i, j) = weights_(a[static_cast<std::size_t>(i)],
                                 b[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

std::string to_string(AffinityGraph::Mode mode) {
    return mode == AffinityGraph::Mode::binary ? "binary" : "weighted";
}

AffinityGraph::Mode mode_from_string(const std::string& s) {
    if (s == "binary") return AffinityGraph::Mode::binary;
    if (s == "weighted") return AffinityGraph::Mode::weighted;
    throw InvalidArgument("unknown graph mode: " + s);
}

namespace {

void require_density_args(const AffinityGraph& g, const VertexSet& a,
                          const VertexSet& b, const char* op) {
    if (a.empty() || b.empty()) {
        throw InvalidArgument(std::string(op) + ": vertex sets must be nonempty");
    }
    if (!a.valid_for(g.size()) || !b.valid_for(g.size())) {
        throw InvalidArgument(std::string(op) + ": vertex id out of range");
    }
    if (!a.disjoint_from(b)) {
        throw InvalidArgument(std::string(op) + ": vertex sets must be disjoint");
    }
}

}  // namespace

double density(const AffinityGraph& g, const VertexSet& a, const VertexSet& b) {
    require_density_args(g, a, b, "density");
    // Canonical summation order keeps d(A,B) == d(B,A) bit-exact.
    const bool swap = b[0] < a[0];
    const VertexSet& first = swap ? b : a;
    const VertexSet& second = swap ? a : b;
    const double d = g.edge_weight(first, second) /
                     (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    // Mathematically in [0,1]; clamp accumulation dust.
    return std::min(1.0, std::max(0.0, d));
}

Eigen::MatrixXd deviation_matrix(const AffinityGraph& g, const VertexSet& a,
                                 const VertexSet& b) {
    require_density_args(g, a, b, "deviation_matrix");
    Eigen::MatrixXd w = g.block(a, b);
    w.array() -= density(g, a, b);
    return w;
}

}  // namespace regc
