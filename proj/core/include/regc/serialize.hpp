#pragma once

#include <string>
#include <vector>

#include "regc/clustering.hpp"
#include "regc/evaluation.hpp"
#include "regc/graph.hpp"
#include "regc/partition.hpp"
#include "regc/reduced.hpp"

namespace regc {

// Graph files: JSON {"n", "mode", "weights"} or a binary matrix dump
// (magic "RGCM"). load_graph sniffs the format.
std::string graph_to_json(const AffinityGraph& g);
AffinityGraph graph_from_json(const std::string& text);
void save_graph_binary(const AffinityGraph& g, const std::string& path);
AffinityGraph load_graph_binary(const std::string& path);
void save_graph(const AffinityGraph& g, const std::string& path,
                const std::string& format);  // "json" or "bin"
AffinityGraph load_graph(const std::string& path);

// Partition files carry the partition, the per-iteration trace and the
// configuration that produced them.
struct PartitionFile {
    EquitablePartition partition;
    RunTrace trace;
    RegularityConfig config;
};
std::string partition_to_json(const PprResult& result, const RegularityConfig& cfg);
PartitionFile partition_from_json(const std::string& text);

std::string reduced_to_json(const ReducedGraph& r);
ReducedGraph reduced_from_json(const std::string& text);

std::string assignment_to_json(const ClusterAssignment& a);
ClusterAssignment assignment_from_json(const std::string& text);

std::string accuracy_to_json(const AccuracyReport& r);

/// Label vectors: JSON {"labels": [...]}, or plain text with one integer
/// per line (or comma-separated).
std::vector<int> load_labels(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace regc
