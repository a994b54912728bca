#include <doctest.h>

#include <numeric>

#include <cstdlib>

#include "regc/errors.hpp"
#include "regc/parallel.hpp"
#include "regc/generators.hpp"
#include "regc/graph.hpp"

#include "helpers.hpp"

using namespace regc;

namespace {

AffinityGraph complete_bipartite(int p, int q) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p + q, p + q);
    for (int i = 0; i < p; ++i) {
        for (int j = p; j < p + q; ++j) w(i, j) = w(j, i) = 1.0;
    }
    return AffinityGraph(std::move(w), AffinityGraph::Mode::binary);
}

}  // namespace

TEST_CASE("VertexSet basics") {
    VertexSet s({3, 1, 2});
    CHECK(s.ids() == std::vector<int>{1, 2, 3});
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(4));
    CHECK_THROWS_AS(VertexSet({1, 1}), InvalidArgument);
    CHECK_THROWS_AS(VertexSet({-1}), InvalidArgument);
    CHECK(VertexSet({0, 1}).disjoint_from(VertexSet({2, 3})));
    CHECK_FALSE(VertexSet({0, 2}).disjoint_from(VertexSet({2, 3})));
}

TEST_CASE("AffinityGraph validates invariants") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
    w(0, 1) = w(1, 0) = 0.5;
    CHECK_NOTHROW(AffinityGraph(w, AffinityGraph::Mode::weighted));
    // binary mode rejects fractional weights
    CHECK_THROWS_AS(AffinityGraph(w, AffinityGraph::Mode::binary), InvalidArgument);

    Eigen::MatrixXd bad = w;
    bad(0, 1) = 1.5;
    CHECK_THROWS_AS(AffinityGraph(bad, AffinityGraph::Mode::weighted), InvalidArgument);
    bad = w;
    bad(1, 0) = 0.25;  // asymmetric
    CHECK_THROWS_AS(AffinityGraph(bad, AffinityGraph::Mode::weighted), InvalidArgument);
    bad = w;
    bad(2, 2) = 0.1;  // nonzero diagonal
    CHECK_THROWS_AS(AffinityGraph(bad, AffinityGraph::Mode::weighted), InvalidArgument);
}

TEST_CASE("density on complete bipartite and empty graphs") {
    AffinityGraph k23 = complete_bipartite(2, 3);
    CHECK(density(k23, VertexSet::range(0, 2), VertexSet::range(2, 5)) == 1.0);

    AffinityGraph empty(Eigen::MatrixXd::Zero(5, 5), AffinityGraph::Mode::binary);
    CHECK(density(empty, VertexSet({0, 1}), VertexSet({3, 4})) == 0.0);
}

TEST_CASE("density counts edges over |A||B|") {
    // a = {0,1}, b = {2,3}, edges 0-2 and 1-3 only: e(A,B) = 2 of 4.
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
    w(0, 2) = w(2, 0) = 1.0;
    w(1, 3) = w(3, 1) = 1.0;
    AffinityGraph g(w, AffinityGraph::Mode::binary);
    CHECK(density(g, VertexSet({0, 1}), VertexSet({2, 3})) == doctest::Approx(0.5));
}

TEST_CASE("density rejects empty or overlapping sets") {
    AffinityGraph g = test::random_weighted_graph(6, 1);
    CHECK_THROWS_AS(density(g, VertexSet{}, VertexSet({1})), InvalidArgument);
    CHECK_THROWS_AS(density(g, VertexSet({0, 1}), VertexSet({1, 2})), InvalidArgument);
    CHECK_THROWS_AS(density(g, VertexSet({0}), VertexSet({7})), InvalidArgument);
}

TEST_CASE("density symmetry and union additivity over random graphs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        AffinityGraph g = test::random_weighted_graph(20, 100 + seed);
        Rng rng(seed);
        std::vector<int> order(20);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        VertexSet a(std::vector<int>(order.begin(), order.begin() + 5));
        VertexSet b1(std::vector<int>(order.begin() + 5, order.begin() + 9));
        VertexSet b2(std::vector<int>(order.begin() + 9, order.begin() + 15));
        std::vector<int> b_union(order.begin() + 5, order.begin() + 15);

        CHECK(density(g, a, b1) == density(g, b1, a));

        // e(A, B1 u B2) = e(A,B1) + e(A,B2) up to accumulation error.
        const double lhs = g.edge_weight(a, VertexSet(b_union));
        const double rhs = g.edge_weight(a, b1) + g.edge_weight(a, b2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("deviation_matrix centers the block") {
    AffinityGraph k23 = complete_bipartite(2, 3);
    Eigen::MatrixXd w = deviation_matrix(k23, VertexSet::range(0, 2), VertexSet::range(2, 5));
    CHECK(w.rows() == 2);
    CHECK(w.cols() == 3);
    CHECK(w.cwiseAbs().maxCoeff() == 0.0);

    // d(a, b) = 0.5 with the 0-2 edge present: W[0][0] = 1 - 0.5.
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    m(0, 2) = m(2, 0) = 1.0;
    m(1, 3) = m(3, 1) = 1.0;
    AffinityGraph g(m, AffinityGraph::Mode::binary);
    Eigen::MatrixXd dev = deviation_matrix(g, VertexSet({0, 1}), VertexSet({2, 3}));
    CHECK(dev(0, 0) == doctest::Approx(0.5));

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        AffinityGraph r = test::random_weighted_graph(16, 50 + seed);
        VertexSet a = VertexSet::range(0, 7);
        VertexSet b = VertexSet::range(7, 16);
        Eigen::MatrixXd d = deviation_matrix(r, a, b);
        CHECK(std::abs(d.sum()) <= 1e-9 * 7 * 9);  // grand sum vanishes
    }
}

TEST_CASE("gen_random_bipartite endpoints and determinism") {
    AffinityGraph none = gen_random_bipartite(4, 5, 0.0, 9);
    CHECK(none.weights().sum() == 0.0);

    AffinityGraph all = gen_random_bipartite(4, 5, 1.0, 9);
    CHECK(density(all, VertexSet::range(0, 4), VertexSet::range(4, 9)) == 1.0);
    CHECK(all.weights()(0, 1) == 0.0);  // no edges inside a part

    AffinityGraph a = gen_random_bipartite(10, 10, 0.5, 1234);
    AffinityGraph b = gen_random_bipartite(10, 10, 0.5, 1234);
    CHECK(a.weights() == b.weights());

    // Binomial(100, 1/2) stays within [20, 80] far beyond any plausible tail.
    const double edges = a.weights().sum() / 2.0;
    CHECK(edges >= 20);
    CHECK(edges <= 80);

    CHECK_THROWS_AS(gen_random_bipartite(3, 3, 1.5, 0), InvalidArgument);
}

TEST_CASE("gen_planted_partition structure") {
    PlantedPartition cliques = gen_planted_partition({5, 5}, 1.0, 0.0, 3);
    CHECK(density(cliques.graph, VertexSet::range(0, 5), VertexSet::range(5, 10)) == 0.0);
    CHECK(density(cliques.graph, VertexSet::range(0, 2), VertexSet::range(2, 5)) == 1.0);
    CHECK(cliques.true_labels == std::vector<int>{0, 0, 0, 0, 0, 1, 1, 1, 1, 1});

    PlantedPartition pp = gen_planted_partition({400, 400, 400}, 0.7, 0.05, 11);
    const double d_in = density(pp.graph, VertexSet::range(0, 200), VertexSet::range(200, 400));
    CHECK(d_in == doctest::Approx(0.7).epsilon(0.08));
    const double d_out = density(pp.graph, VertexSet::range(0, 400), VertexSet::range(400, 800));
    CHECK(d_out == doctest::Approx(0.05).epsilon(0.2));

    PlantedPartition again = gen_planted_partition({400, 400, 400}, 0.7, 0.05, 11);
    CHECK(pp.graph.weights() == again.graph.weights());

    CHECK_THROWS_AS(gen_planted_partition({4}, 0.2, 0.5, 0), InvalidArgument);
}

TEST_CASE("effective_threads: explicit request beats the environment") {
    setenv("REGCLUS_THREADS", "3", 1);
    CHECK(regc::effective_threads(0) == 3);
    CHECK(regc::effective_threads(7) == 7);
    setenv("REGCLUS_THREADS", "garbage", 1);
    CHECK(regc::effective_threads(0) >= 1);
    unsetenv("REGCLUS_THREADS");
    CHECK(regc::effective_threads(0) >= 1);
}
