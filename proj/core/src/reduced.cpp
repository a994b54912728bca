#include "regc/reduced.hpp"

#include "regc/errors.hpp"

namespace regc {

ReducedGraph build_reduced(const AffinityGraph& g, const EquitablePartition& p,
                           std::optional<double> density_threshold) {
    const int k = p.k();
    if (k < 2) throw InvalidArgument("build_reduced: need at least two classes");
    if (density_threshold && !(*density_threshold >= 0.0 && *density_threshold <= 1.0)) {
        throw InvalidArgument("build_reduced: density threshold must be in [0,1]");
    }

    ReducedGraph r;
    r.k = k;
    r.weights = Eigen::MatrixXd::Zero(k, k);
    r.class_map = p.classes;
    for (int s = 0; s < k; ++s) {
        for (int t = s + 1; t < k; ++t) {
            double d = density(g, p.classes[static_cast<std::size_t>(s)],
                               p.classes[static_cast<std::size_t>(t)]);
            if (density_threshold && d < *density_threshold) d = 0.0;
            r.weights(s, t) = d;
            r.weights(t, s) = d;
        }
    }
    return r;
}

}  // namespace regc
