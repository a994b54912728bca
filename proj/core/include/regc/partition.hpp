#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "regc/graph.hpp"
#include "regc/regularity.hpp"

namespace regc {

/// Partition of the vertices into k classes of identical size plus an
/// exceptional class V0 holding the leftovers.
struct EquitablePartition {
    std::vector<VertexSet> classes;
    VertexSet exceptional;
    int class_size = 0;

    int k() const { return static_cast<int>(classes.size()); }
    int total_vertices() const;

    /// Checks equal class sizes, pairwise disjointness and full coverage of
    /// [0, n). Throws InvalidArgument on violation.
    void validate(int n) const;
};

struct RegularityConfig {
    double epsilon = 0.25;
    int l = 2;               // refinement number: pieces per class and growth factor
    int h = 0;               // minimum class size; 0 = max(ceil(1/eps), 2l)
    CheckerKind checker = CheckerKind::alon;
    std::uint64_t seed = 1;
    int max_iters = 30;
    int threads = 0;         // 0 = library default

    int effective_h() const;
    void validate() const;
};

enum class HaltReason { class_size_below_h, regularity_reached, max_iters };

std::string to_string(HaltReason r);

struct TraceRecord {
    int iteration = 0;        // 1-based
    int k = 0;
    int class_size = 0;
    int exceptional_size = 0;
    double index = 0.0;
    int irregular_pairs = 0;
    int required_regular = 0;  // regular pairs needed to pass the halt test
};

struct RunTrace {
    std::vector<TraceRecord> records;
    HaltReason halt_reason = HaltReason::max_iters;
};

/// Seeded arbitrary equitable partition into l classes of floor(n/l); the
/// remainder (< l vertices) forms the exceptional class.
EquitablePartition initial_partition(int n, int l, std::uint64_t seed);

/// Partition potential: ind(P) = (1/k^2) sum_{s<t} d(C_s, C_t)^2, a value in
/// [0, (k-1)/(2k)] that grows under refinement.
double index_of(const EquitablePartition& p, const AffinityGraph& g);

/// One verdict per unordered class pair (s < t), k(k-1)/2 in total, ordered
/// lexicographically. Pure per-pair work with seeds derived from
/// (seed, s, t); safe to evaluate in parallel, identical for any thread count.
std::vector<PairVerdict> check_all_pairs(const AffinityGraph& g,
                                         const EquitablePartition& p, double eps,
                                         CheckerKind checker, std::uint64_t seed,
                                         int threads = 0);

/// One step of the modified refinement: each class splits into at most two
/// atoms along one randomly chosen irregular certificate, m = floor(q/l)
/// subsets are carved per class (recycling class leftovers), and whatever
/// remains joins the exceptional class. Produces exactly l*k classes of
/// size m.
EquitablePartition modified_refine(const EquitablePartition& p,
                                   const std::vector<PairVerdict>& verdicts, int l,
                                   std::uint64_t seed);

struct PprResult {
    EquitablePartition partition;
    RunTrace trace;
};

/// Observer invoked once per iteration with the checked partition, its trace
/// record and the pair verdicts. Used by tests to audit intermediate state.
using PprObserver = std::function<void(const EquitablePartition&, const TraceRecord&,
                                       const std::vector<PairVerdict>&)>;

/// The practical regularity partitioning driver: arbitrary equitable start,
/// pair checks, halt tests (minimum class size h, then the irregular-pair
/// budget eps*k^2), refinement. The returned partition is the finest one
/// with class_size >= h, or the first eps-regular one.
PprResult run_ppr(const AffinityGraph& g, const RegularityConfig& cfg,
                  const PprObserver& observer = {});

}  // namespace regc
