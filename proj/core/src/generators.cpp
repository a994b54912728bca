#include "regc/generators.hpp"

#include "regc/errors.hpp"
#include "regc/rng.hpp"

namespace regc {

AffinityGraph gen_random_bipartite(int p, int q, double dens, std::uint64_t seed) {
    if (p <= 0 || q <= 0) throw InvalidArgument("gen_random_bipartite: parts must be nonempty");
    if (!(dens >= 0.0 && dens <= 1.0)) {
        throw InvalidArgument("gen_random_bipartite: density must be in [0,1]");
    }
    const int n = p + q;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    Rng rng(seed);
    for (int i = 0; i < p; ++i) {
        for (int j = p; j < n; ++j) {
            if (rng.next_unit() < dens) {
                w(i, j) = 1.0;
                w(j, i) = 1.0;
            }
        }
    }
    return AffinityGraph(std::move(w), AffinityGraph::Mode::binary);
}

PlantedPartition gen_planted_partition(const std::vector<int>& block_sizes,
                                       double p_in, double p_out,
                                       std::uint64_t seed) {
    if (block_sizes.empty()) throw InvalidArgument("gen_planted_partition: no blocks");
    for (int s : block_sizes) {
        if (s <= 0) throw InvalidArgument("gen_planted_partition: empty block");
    }
    if (!(p_out >= 0.0 && p_in <= 1.0 && p_out <= p_in)) {
        throw InvalidArgument("gen_planted_partition: need 0 <= p_out <= p_in <= 1");
    }

    std::vector<int> labels;
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
        labels.insert(labels.end(), static_cast<std::size_t>(block_sizes[b]),
                      static_cast<int>(b));
    }
    const int n = static_cast<int>(labels.size());

    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double pr = labels[static_cast<std::size_t>(i)] ==
                                      labels[static_cast<std::size_t>(j)]
                                  ? p_in
                                  : p_out;
            if (rng.next_unit() < pr) {
                w(i, j) = 1.0;
                w(j, i) = 1.0;
            }
        }
    }
    return PlantedPartition{AffinityGraph(std::move(w), AffinityGraph::Mode::binary),
                            std::move(labels)};
}

}  // namespace regc
