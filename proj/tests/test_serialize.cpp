#include <doctest.h>

#include <numeric>

#include <cstdio>

#include <json.hpp>

#include "regc/errors.hpp"
#include "regc/evaluation.hpp"
#include "regc/generators.hpp"
#include "regc/partition.hpp"
#include "regc/serialize.hpp"

#include "helpers.hpp"

using namespace regc;

TEST_CASE("graph JSON and binary round trips") {
    AffinityGraph g = test::random_weighted_graph(9, 77);
    AffinityGraph back = graph_from_json(graph_to_json(g));
    CHECK(back.size() == 9);
    CHECK(back.mode() == AffinityGraph::Mode::weighted);
    CHECK(back.weights().isApprox(g.weights(), 1e-15));

    const std::string path = "regc_test_graph.bin";
    save_graph_binary(g, path);
    AffinityGraph loaded = load_graph_binary(path);
    CHECK(loaded.weights() == g.weights());  // bit-exact dump
    AffinityGraph sniffed = load_graph(path);
    CHECK(sniffed.weights() == g.weights());
    std::remove(path.c_str());

    CHECK_THROWS_AS(graph_from_json("{\"n\": 2}"), DataError);
}

TEST_CASE("partition JSON carries the documented schema") {
    PlantedPartition pp = gen_planted_partition({40, 40}, 0.9, 0.05, 2);
    RegularityConfig cfg;
    cfg.epsilon = 0.25;
    cfg.l = 2;
    cfg.checker = CheckerKind::fk;
    cfg.seed = 10;
    PprResult res = run_ppr(pp.graph, cfg);
    const std::string text = partition_to_json(res, cfg);

    auto j = nlohmann::json::parse(text);
    for (const char* key :
         {"k", "class_size", "classes", "exceptional", "trace", "halt_reason", "config"}) {
        CHECK(j.contains(key));
    }
    REQUIRE(j["trace"].is_array());
    REQUIRE_FALSE(j["trace"].empty());
    for (const char* key : {"iter", "k", "class_size", "exceptional_size", "index",
                            "irregular_pairs", "required_regular"}) {
        CHECK(j["trace"][0].contains(key));
    }
    for (const char* key : {"epsilon", "l", "h", "checker", "seed", "max_iters"}) {
        CHECK(j["config"].contains(key));
    }

    PartitionFile back = partition_from_json(text);
    back.partition.validate(80);
    CHECK(back.partition.k() == res.partition.k());
    CHECK(back.trace.records.size() == res.trace.records.size());
    CHECK(back.trace.halt_reason == res.trace.halt_reason);
    CHECK(back.config.epsilon == cfg.epsilon);

    // Serialization is stable byte for byte.
    CHECK(partition_to_json(res, cfg) == text);
}

TEST_CASE("reduced, assignment and accuracy schemas") {
    PlantedPartition pp = gen_planted_partition({30, 30}, 0.8, 0.1, 5);
    EquitablePartition p = initial_partition(60, 2, 3);
    ReducedGraph r = build_reduced(pp.graph, p);
    ReducedGraph rback = reduced_from_json(reduced_to_json(r));
    CHECK(rback.k == r.k);
    CHECK(rback.weights.isApprox(r.weights, 1e-15));
    CHECK(rback.class_map[0].ids() == r.class_map[0].ids());

    ClusterAssignment a;
    a.labels = {0, 1, 1, 0};
    a.k_clusters = 2;
    a.method = "spectral";
    ClusterAssignment aback = assignment_from_json(assignment_to_json(a));
    CHECK(aback.labels == a.labels);
    CHECK(aback.k_clusters == 2);
    CHECK(aback.method == "spectral");

    AccuracyReport rep = accuracy({0, 0, 1, 1}, {1, 1, 0, 0});
    auto j = nlohmann::json::parse(accuracy_to_json(rep));
    CHECK(j["accuracy"].get<double>() == doctest::Approx(100.0));
    CHECK(j.contains("mapping"));
    CHECK(j.contains("confusion"));
}

TEST_CASE("load_labels accepts text and JSON assignments") {
    const std::string path = "regc_test_labels.txt";
    write_text_file(path, "0\n1\n2\n1\n");
    CHECK(load_labels(path) == std::vector<int>{0, 1, 2, 1});
    write_text_file(path, "{\"labels\": [3, 1, 2], \"k\": 3, \"method\": \"m\"}");
    CHECK(load_labels(path) == std::vector<int>{3, 1, 2});
    std::remove(path.c_str());
}
