#include <doctest.h>

#include <numeric>

#include "regc/errors.hpp"
#include "regc/generators.hpp"
#include "regc/partition.hpp"

#include "helpers.hpp"

using namespace regc;

namespace {

/// Graph giving the pair (A = 0..7, B = 8..15) a certificate with
/// |X| = 3: complete X-Y edges between X = {0,1,2} and Y = {8,9,10},
/// nothing else, so d(A,B) = 9/64 and d(X,Y) = 1.
AffinityGraph three_five_graph() {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(16, 16);
    for (int i = 0; i < 3; ++i) {
        for (int j = 8; j < 11; ++j) w(i, j) = w(j, i) = 1.0;
    }
    return AffinityGraph(std::move(w), AffinityGraph::Mode::binary);
}

PairVerdict verdict_for(const AffinityGraph& g, VertexSet x, VertexSet y,
                        const VertexSet& vs, const VertexSet& vt, int s, int t) {
    const double dev = std::abs(density(g, x, y) - density(g, vs, vt));
    PairVerdict v;
    v.regular = false;
    v.certificate.emplace(std::move(x), std::move(y), dev, dev / 2.0);
    v.checker = CheckerKind::alon;
    v.s = s;
    v.t = t;
    return v;
}

}  // namespace

TEST_CASE("initial_partition shapes and determinism") {
    EquitablePartition p = initial_partition(10, 2, 4);
    CHECK(p.k() == 2);
    CHECK(p.class_size == 5);
    CHECK(p.exceptional.empty());
    p.validate(10);

    EquitablePartition q = initial_partition(11, 2, 4);
    CHECK(q.class_size == 5);
    CHECK(q.exceptional.size() == 1);
    q.validate(11);

    // 1599 vertices with l = 2: classes of 799 and one leftover.
    EquitablePartition wine = initial_partition(1599, 2, 7);
    CHECK(wine.k() == 2);
    CHECK(wine.class_size == 799);
    CHECK(wine.exceptional.size() == 1);
    wine.validate(1599);

    EquitablePartition a = initial_partition(100, 3, 9);
    EquitablePartition b = initial_partition(100, 3, 9);
    CHECK(a.classes[0].ids() == b.classes[0].ids());
    CHECK(a.classes[2].ids() == b.classes[2].ids());

    CHECK_THROWS_AS(initial_partition(3, 2, 0), InvalidArgument);
}

TEST_CASE("index_of closed forms") {
    AffinityGraph zero(Eigen::MatrixXd::Zero(6, 6), AffinityGraph::Mode::binary);
    EquitablePartition p;
    p.class_size = 3;
    p.classes = {VertexSet::range(0, 3), VertexSet::range(3, 6)};
    CHECK(index_of(p, zero) == 0.0);

    // k = 2 with d(C1,C2) = 1: ind = 1/4.
    Eigen::MatrixXd w = Eigen::MatrixXd::Ones(6, 6);
    w.diagonal().setZero();
    AffinityGraph complete(w, AffinityGraph::Mode::binary);
    CHECK(index_of(p, complete) == doctest::Approx(0.25));

    // k = 3, all pairwise densities 1/2: ind = (1/9) * 3 * 1/4 = 1/12.
    // Classes {0,1},{2,3},{4,5} joined by a perfect matching: 2 of 4 edges.
    Eigen::MatrixXd half = Eigen::MatrixXd::Zero(6, 6);
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            half(2 * a, 2 * b) = half(2 * b, 2 * a) = 1.0;
            half(2 * a + 1, 2 * b + 1) = half(2 * b + 1, 2 * a + 1) = 1.0;
        }
    }
    AffinityGraph hg(half, AffinityGraph::Mode::binary);
    EquitablePartition t;
    t.class_size = 2;
    t.classes = {VertexSet({0, 1}), VertexSet({2, 3}), VertexSet({4, 5})};
    CHECK(density(hg, t.classes[0], t.classes[1]) == doctest::Approx(0.5));
    CHECK(index_of(t, hg) == doctest::Approx(1.0 / 12.0));

    EquitablePartition single;
    single.class_size = 6;
    single.classes = {VertexSet::range(0, 6)};
    CHECK_THROWS_AS(index_of(single, zero), InvalidArgument);
}

TEST_CASE("check_all_pairs counts and determinism") {
    AffinityGraph cliques = test::clique_union({6, 6, 6});
    EquitablePartition aligned;
    aligned.class_size = 6;
    aligned.classes = {VertexSet::range(0, 6), VertexSet::range(6, 12),
                       VertexSet::range(12, 18)};
    auto verdicts = check_all_pairs(cliques, aligned, 0.3, CheckerKind::alon, 1);
    CHECK(verdicts.size() == 3);  // k(k-1)/2
    for (const auto& v : verdicts) {
        CHECK(v.regular);  // cross-clique densities are 0
        CHECK(v.s < v.t);
    }

    // Two classes produce exactly one verdict.
    EquitablePartition two;
    two.class_size = 9;
    two.classes = {VertexSet::range(0, 9), VertexSet::range(9, 18)};
    CHECK(check_all_pairs(cliques, two, 0.3, CheckerKind::fk, 1).size() == 1);

    // Planted structure with a random (hence mixed) initial partition is
    // caught as irregular; the exhaustive oracle confirms on the same pair.
    PlantedPartition pp = gen_planted_partition({10, 10}, 0.9, 0.05, 21);
    EquitablePartition mixed = initial_partition(20, 2, 3);
    auto got = check_all_pairs(pp.graph, mixed, 0.25, CheckerKind::fk, 9);
    REQUIRE(got.size() == 1);
    CHECK_FALSE(got[0].regular);
    CHECK_FALSE(check_pair_exhaustive(pp.graph, mixed.classes[0], mixed.classes[1], 0.25)
                    .regular);

    // Scheduling independence: 1 worker and 4 workers agree bit for bit.
    AffinityGraph g = test::random_weighted_graph(40, 77);
    EquitablePartition p = initial_partition(40, 4, 5);
    auto v1 = check_all_pairs(g, p, 0.3, CheckerKind::fk, 13, 1);
    auto v4 = check_all_pairs(g, p, 0.3, CheckerKind::fk, 13, 4);
    REQUIRE(v1.size() == v4.size());
    for (std::size_t i = 0; i < v1.size(); ++i) {
        CHECK(v1[i].regular == v4[i].regular);
        if (!v1[i].regular) {
            CHECK(v1[i].certificate->x.ids() == v4[i].certificate->x.ids());
            CHECK(v1[i].certificate->deviation == v4[i].certificate->deviation);
        }
    }
}

TEST_CASE("modified_refine: hand trace of the 3/5 atom split at l=2") {
    AffinityGraph g = three_five_graph();
    EquitablePartition p;
    p.class_size = 8;
    p.classes = {VertexSet::range(0, 8), VertexSet::range(8, 16)};

    std::vector<PairVerdict> verdicts;
    verdicts.push_back(verdict_for(g, VertexSet({0, 1, 2}), VertexSet({8, 9, 10}),
                                   p.classes[0], p.classes[1], 0, 1));

    EquitablePartition q = modified_refine(p, verdicts, 2, 5);
    q.validate(16);
    CHECK(q.k() == 4);          // exactly l * k
    CHECK(q.class_size == 4);   // m = floor(8/2)
    CHECK(q.exceptional.empty());  // 3+1 leftovers recycle into one subset

    // Each class splits into atoms {3, 5}; the 5-atom yields one clean
    // subset, so at least one new class per old class avoids the
    // certificate side entirely.
    auto subset_of = [](const VertexSet& a, const VertexSet& b) {
        for (int v : a) {
            if (!b.contains(v)) return false;
        }
        return true;
    };
    const VertexSet a_complement({3, 4, 5, 6, 7});
    const VertexSet b_complement({11, 12, 13, 14, 15});
    int clean = 0;
    for (const auto& cls : q.classes) {
        if (subset_of(cls, a_complement) || subset_of(cls, b_complement)) ++clean;
    }
    CHECK(clean >= 2);
}

TEST_CASE("modified_refine: carving caps at l subsets per class") {
    // Three classes of 8 with l = 3: m = 2 and floor(8/2) = 4 > l, so the
    // cap keeps k_{i+1} = l k_i exact; 2 leftovers per class go exceptional.
    AffinityGraph g = test::clique_union({12, 12});
    EquitablePartition p;
    p.class_size = 8;
    p.classes = {VertexSet::range(0, 8), VertexSet::range(8, 16), VertexSet::range(16, 24)};

    std::vector<PairVerdict> verdicts;
    verdicts.push_back(verdict_for(g, VertexSet({0, 1, 2, 3}), VertexSet({8, 9, 10, 11}),
                                   p.classes[0], p.classes[1], 0, 1));

    EquitablePartition q = modified_refine(p, verdicts, 3, 7);
    q.validate(24);
    CHECK(q.k() == 9);
    CHECK(q.class_size == 2);
    CHECK(q.exceptional.size() == 6);
}

TEST_CASE("modified_refine rejects an all-regular round") {
    EquitablePartition p;
    p.class_size = 4;
    p.classes = {VertexSet::range(0, 4), VertexSet::range(4, 8)};
    std::vector<PairVerdict> verdicts(1);  // regular by default
    CHECK_THROWS_AS(modified_refine(p, verdicts, 2, 1), InvalidArgument);
}

TEST_CASE("run_ppr: uniform graphs reach regularity immediately") {
    AffinityGraph cliques = test::clique_union({20, 20});
    RegularityConfig cfg;
    cfg.epsilon = 0.5;
    cfg.l = 2;
    cfg.seed = 8;
    PprResult res = run_ppr(cliques, cfg);
    CHECK(res.trace.halt_reason == HaltReason::regularity_reached);
    CHECK(res.trace.records.size() == 1);
    res.partition.validate(40);
}

TEST_CASE("run_ppr: iteration invariants on planted graphs") {
    PlantedPartition pp = gen_planted_partition({100, 100, 100}, 0.75, 0.05, 5);
    RegularityConfig cfg;
    cfg.epsilon = 0.25;
    cfg.l = 2;
    cfg.checker = CheckerKind::fk;
    cfg.seed = 17;
    PprResult res = run_ppr(pp.graph, cfg);

    CHECK(res.trace.records.size() >= 2);
    int expected_k = cfg.l;
    int expected_size = 300 / cfg.l;
    for (const auto& rec : res.trace.records) {
        CHECK(rec.k == expected_k);
        CHECK(rec.class_size == expected_size);
        CHECK(rec.index >= 0.0);
        CHECK(rec.index <=
              (expected_k - 1) / (2.0 * expected_k) + 1e-12);
        expected_k *= cfg.l;
        expected_size /= cfg.l;
    }
    // Returned partition is the last recorded one (finest with size >= h).
    CHECK(res.partition.k() == res.trace.records.back().k);
    CHECK(res.partition.class_size >= cfg.effective_h());
    res.partition.validate(300);

    // Bit-identical reruns, independent of worker count.
    RegularityConfig cfg4 = cfg;
    cfg4.threads = 4;
    PprResult res4 = run_ppr(pp.graph, cfg4);
    CHECK(res4.trace.halt_reason == res.trace.halt_reason);
    REQUIRE(res4.trace.records.size() == res.trace.records.size());
    for (std::size_t i = 0; i < res4.trace.records.size(); ++i) {
        CHECK(res4.trace.records[i].index == res.trace.records[i].index);
        CHECK(res4.trace.records[i].irregular_pairs == res.trace.records[i].irregular_pairs);
    }
    for (int c = 0; c < res.partition.k(); ++c) {
        CHECK(res4.partition.classes[static_cast<std::size_t>(c)].ids() ==
              res.partition.classes[static_cast<std::size_t>(c)].ids());
    }
}

TEST_CASE("run_ppr halts on max_iters with the last checked partition") {
    PlantedPartition pp = gen_planted_partition({60, 60}, 0.9, 0.05, 3);
    RegularityConfig cfg;
    cfg.epsilon = 0.2;
    cfg.l = 2;
    cfg.seed = 2;
    cfg.max_iters = 2;
    PprResult res = run_ppr(pp.graph, cfg);
    if (res.trace.halt_reason == HaltReason::max_iters) {
        CHECK(res.trace.records.size() == 2);
        CHECK(res.partition.k() == res.trace.records.back().k);
    }
    res.partition.validate(120);
}

TEST_CASE("run_ppr precondition") {
    AffinityGraph g = test::random_binary_graph(10, 0.5, 1);
    RegularityConfig cfg;
    cfg.epsilon = 0.2;  // h = 5, l = 2 requires n >= 10; n = 10 passes
    cfg.l = 2;
    CHECK_NOTHROW(run_ppr(g, cfg));
    RegularityConfig tight = cfg;
    tight.h = 6;  // now l*h = 12 > 10
    CHECK_THROWS_AS(run_ppr(g, tight), InvalidArgument);
}

TEST_CASE("modified_refine always carves exactly l subsets per class") {
    // Stress the carving over many random certificate splits: the class
    // capacity floor(q/m) >= l guarantees the cap is always reachable.
    Rng rng(515);
    for (int trial = 0; trial < 60; ++trial) {
        const int l = 2 + static_cast<int>(rng.next_below(3));
        const int q = 2 * l + static_cast<int>(rng.next_below(40));
        const int k = 2;
        const int n = k * q;
        AffinityGraph g = test::clique_union({n / 2, n - n / 2});
        EquitablePartition p;
        p.class_size = q;
        p.classes = {VertexSet::range(0, q), VertexSet::range(q, 2 * q)};

        // Random certificate side sizes in [1, q-1] for both classes.
        const int a = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(q - 1)));
        const int b = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(q - 1)));
        PairVerdict v;
        v.regular = false;
        v.certificate.emplace(VertexSet::range(0, a), VertexSet::range(q, q + b), 1.0, 0.5);
        v.checker = CheckerKind::alon;
        v.s = 0;
        v.t = 1;

        EquitablePartition out = modified_refine(p, {v}, l, 99 + trial);
        out.validate(n);
        CHECK(out.k() == l * k);
        CHECK(out.class_size == q / l);
    }
}
