#include "regc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "regc/errors.hpp"
#include "regc/parallel.hpp"
#include "regc/rng.hpp"

namespace regc {

int EquitablePartition::total_vertices() const {
    return k() * class_size + exceptional.size();
}

void EquitablePartition::validate(int n) const {
    if (classes.empty() || class_size < 1) {
        throw InvalidArgument("EquitablePartition: need at least one nonempty class");
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    auto absorb = [&](const VertexSet& set, int expected_size) {
        if (expected_size >= 0 && set.size() != expected_size) {
            throw InvalidArgument("EquitablePartition: class size mismatch");
        }
        for (int v : set) {
            if (v < 0 || v >= n) throw InvalidArgument("EquitablePartition: vertex out of range");
            if (seen[static_cast<std::size_t>(v)]) {
                throw InvalidArgument("EquitablePartition: classes overlap");
            }
            seen[static_cast<std::size_t>(v)] = 1;
        }
    };
    for (const auto& c : classes) absorb(c, class_size);
    absorb(exceptional, -1);
    if (total_vertices() != n ||
        !std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; })) {
        throw InvalidArgument("EquitablePartition: classes do not cover all vertices");
    }
}

int RegularityConfig::effective_h() const {
    if (h > 0) return h;
    return std::max(static_cast<int>(std::ceil(1.0 / epsilon)), 2 * l);
}

void RegularityConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InvalidArgument("RegularityConfig: epsilon must be in (0,1)");
    }
    if (l < 2) throw InvalidArgument("RegularityConfig: refinement number l must be >= 2");
    if (effective_h() < 2) throw InvalidArgument("RegularityConfig: h must be >= 2");
    if (max_iters < 1) throw InvalidArgument("RegularityConfig: max_iters must be >= 1");
}

std::string to_string(HaltReason r) {
    switch (r) {
        case HaltReason::class_size_below_h: return "class_size_below_h";
        case HaltReason::regularity_reached: return "regularity_reached";
        case HaltReason::max_iters: return "max_iters";
    }
    return "max_iters";
}

EquitablePartition initial_partition(int n, int l, std::uint64_t seed) {
    if (l < 1) throw InvalidArgument("initial_partition: l must be >= 1");
    if (n < 2 * l) throw InvalidArgument("initial_partition: n too small for l classes");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(mix_seed(seed, 0x696e6974ULL));  // "init"
    rng.shuffle(order);

    const int q = n / l;
    EquitablePartition p;
    p.class_size = q;
    p.classes.reserve(static_cast<std::size_t>(l));
    auto it = order.begin();
    for (int c = 0; c < l; ++c) {
        p.classes.emplace_back(std::vector<int>(it, it + q));
        it += q;
    }
    p.exceptional = VertexSet(std::vector<int>(it, order.end()));
    return p;
}

double index_of(const EquitablePartition& p, const AffinityGraph& g) {
    const int k = p.k();
    if (k < 2) throw InvalidArgument("index_of: need at least two classes");
    double sum = 0.0;
    for (int s = 0; s < k; ++s) {
        for (int t = s + 1; t < k; ++t) {
            const double d = density(g, p.classes[static_cast<std::size_t>(s)],
                                     p.classes[static_cast<std::size_t>(t)]);
            sum += d * d;
        }
    }
    return sum / (static_cast<double>(k) * static_cast<double>(k));
}

std::vector<PairVerdict> check_all_pairs(const AffinityGraph& g,
                                         const EquitablePartition& p, double eps,
                                         CheckerKind checker, std::uint64_t seed,
                                         int threads) {
    const int k = p.k();
    if (k < 2) throw InvalidArgument("check_all_pairs: need at least two classes");
    if (checker == CheckerKind::exhaustive) {
        throw InvalidArgument("check_all_pairs: the exhaustive oracle is not a driver checker");
    }

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
    for (int s = 0; s < k; ++s) {
        for (int t = s + 1; t < k; ++t) pairs.emplace_back(s, t);
    }

    std::vector<PairVerdict> verdicts(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        const auto [s, t] = pairs[i];
        const auto& vs = p.classes[static_cast<std::size_t>(s)];
        const auto& vt = p.classes[static_cast<std::size_t>(t)];
        const std::uint64_t pair_seed =
            mix_seed(seed, 0x70616972ULL, static_cast<std::uint64_t>(s),
                     static_cast<std::uint64_t>(t));
        PairVerdict v = checker == CheckerKind::alon
                            ? check_pair_alon(g, vs, vt, eps)
                            : check_pair_fk(g, vs, vt, eps, pair_seed);
        v.s = s;
        v.t = t;
        verdicts[i] = std::move(v);
    }, threads);
    return verdicts;
}

namespace {

/// Membership split of one class along a certificate side. Returns the two
/// atoms (certificate part, complement), dropping empty ones.
std::vector<std::vector<int>> split_atoms(const VertexSet& cls, const VertexSet& cert_side) {
    std::vector<int> inside, outside;
    for (int v : cls) {
        if (cert_side.contains(v)) inside.push_back(v);
        else outside.push_back(v);
    }
    std::vector<std::vector<int>> atoms;
    if (!inside.empty()) atoms.push_back(std::move(inside));
    if (!outside.empty()) atoms.push_back(std::move(outside));
    return atoms;
}

}  // namespace

EquitablePartition modified_refine(const EquitablePartition& p,
                                   const std::vector<PairVerdict>& verdicts, int l,
                                   std::uint64_t seed) {
    const int k = p.k();
    const int q = p.class_size;
    if (l < 2) throw InvalidArgument("modified_refine: l must be >= 2");
    const int m = q / l;
    if (m < 1) throw InvalidArgument("modified_refine: class size below refinement number");

    // Irregular pairs indexed per class, in verdict order.
    std::vector<std::vector<const PairVerdict*>> irregular(static_cast<std::size_t>(k));
    int irregular_count = 0;
    for (const auto& v : verdicts) {
        if (v.regular) continue;
        if (!v.certificate) throw InvalidArgument("modified_refine: irregular verdict without certificate");
        if (v.s < 0 || v.t < 0 || v.s >= k || v.t >= k) {
            throw InvalidArgument("modified_refine: verdict class index out of range");
        }
        irregular[static_cast<std::size_t>(v.s)].push_back(&v);
        irregular[static_cast<std::size_t>(v.t)].push_back(&v);
        ++irregular_count;
    }
    if (irregular_count == 0) {
        throw InvalidArgument("modified_refine: no irregular pair to refine along");
    }

    EquitablePartition out;
    out.class_size = m;
    std::vector<int> leftovers(p.exceptional.ids());

    for (int c = 0; c < k; ++c) {
        const auto& cls = p.classes[static_cast<std::size_t>(c)];
        Rng rng(mix_seed(seed, 0x636c617373ULL, static_cast<std::uint64_t>(c)));

        // Modification 1: at most one irregular pair per class, chosen
        // uniformly; its certificate side splits the class into two atoms.
        std::vector<std::vector<int>> atoms;
        const auto& options = irregular[static_cast<std::size_t>(c)];
        if (options.empty()) {
            atoms.push_back(cls.ids());
        } else {
            const auto* chosen =
                options[static_cast<std::size_t>(rng.next_below(options.size()))];
            const VertexSet& side = chosen->s == c ? chosen->certificate->x
                                                   : chosen->certificate->y;
            atoms = split_atoms(cls, side);
        }

        // Largest atom first so full m-subsets are carved before recycling.
        std::stable_sort(atoms.begin(), atoms.end(),
                         [](const auto& a, const auto& b) { return a.size() > b.size(); });

        // Carve floor(|atom|/m) subsets per atom, then recycle pooled
        // leftovers, stopping at exactly l subsets for this class. The cap
        // keeps k_{i+1} = l * k_i exact even when q mod l >= m.
        int carved = 0;
        std::vector<int> pool;
        for (auto& atom : atoms) {
            rng.shuffle(atom);
            std::size_t pos = 0;
            while (carved < l && atom.size() - pos >= static_cast<std::size_t>(m)) {
                out.classes.emplace_back(
                    std::vector<int>(atom.begin() + static_cast<std::ptrdiff_t>(pos),
                                     atom.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(m))));
                pos += static_cast<std::size_t>(m);
                ++carved;
            }
            pool.insert(pool.end(), atom.begin() + static_cast<std::ptrdiff_t>(pos), atom.end());
        }
        rng.shuffle(pool);
        std::size_t pos = 0;
        while (carved < l && pool.size() - pos >= static_cast<std::size_t>(m)) {
            out.classes.emplace_back(
                std::vector<int>(pool.begin() + static_cast<std::ptrdiff_t>(pos),
                                 pool.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(m))));
            pos += static_cast<std::size_t>(m);
            ++carved;
        }
        leftovers.insert(leftovers.end(), pool.begin() + static_cast<std::ptrdiff_t>(pos), pool.end());
    }

    out.exceptional = VertexSet(std::move(leftovers));
    return out;
}

namespace {

int required_regular_pairs(int k, double eps) {
    const int total = k * (k - 1) / 2;
    // Largest irregular count that still halts: strictly below eps * k^2.
    const double budget = eps * static_cast<double>(k) * static_cast<double>(k);
    int allowed = static_cast<int>(std::floor(budget));
    if (static_cast<double>(allowed) == budget) allowed -= 1;
    if (allowed < 0) allowed = 0;
    return total > allowed ? total - allowed : 0;
}

}  // namespace

PprResult run_ppr(const AffinityGraph& g, const RegularityConfig& cfg,
                  const PprObserver& observer) {
    cfg.validate();
    const int n = g.size();
    const int h = cfg.effective_h();
    if (n < cfg.l * h) {
        throw InvalidArgument("run_ppr: graph too small for l classes of size h");
    }

    PprResult res;
    res.partition = initial_partition(n, cfg.l, cfg.seed);
    res.trace.halt_reason = HaltReason::max_iters;

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        EquitablePartition& p = res.partition;
        if (p.class_size < h) {
            // Unreachable under the n >= l*h precondition; kept as the
            // paper's literal step-2 guard.
            res.trace.halt_reason = HaltReason::class_size_below_h;
            break;
        }

        const std::uint64_t iter_seed =
            mix_seed(cfg.seed, 0x6974657261ULL, static_cast<std::uint64_t>(iter));
        const std::vector<PairVerdict> verdicts =
            check_all_pairs(g, p, cfg.epsilon, cfg.checker, iter_seed, cfg.threads);
        const int irregular = static_cast<int>(
            std::count_if(verdicts.begin(), verdicts.end(),
                          [](const PairVerdict& v) { return !v.regular; }));

        TraceRecord rec;
        rec.iteration = iter;
        rec.k = p.k();
        rec.class_size = p.class_size;
        rec.exceptional_size = p.exceptional.size();
        rec.index = index_of(p, g);
        rec.irregular_pairs = irregular;
        rec.required_regular = required_regular_pairs(p.k(), cfg.epsilon);
        res.trace.records.push_back(rec);
        if (observer) observer(p, rec, verdicts);

        const double budget =
            cfg.epsilon * static_cast<double>(p.k()) * static_cast<double>(p.k());
        if (static_cast<double>(irregular) < budget) {
            res.trace.halt_reason = HaltReason::regularity_reached;
            break;
        }
        if (p.class_size / cfg.l < h) {
            // Refining would push classes below h; return the current
            // partition, the finest one respecting the minimum class size.
            res.trace.halt_reason = HaltReason::class_size_below_h;
            break;
        }
        if (iter == cfg.max_iters) break;  // halt_reason stays max_iters
        res.partition = modified_refine(p, verdicts, cfg.l,
                                        mix_seed(cfg.seed, 0x726566696eULL,
                                                 static_cast<std::uint64_t>(iter)));
    }
    return res;
}

}  // namespace regc
