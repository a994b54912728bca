#include "regc/serialize.hpp"

#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "regc/errors.hpp"

namespace regc {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const ordered_json& rows) {
    if (!rows.is_array() || rows.empty()) throw DataError("matrix JSON must be a nonempty array");
    const auto r = rows.size();
    const auto c = rows[0].size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DataError("matrix JSON is ragged");
        for (std::size_t j = 0; j < c; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j].get<double>();
        }
    }
    return m;
}

ordered_json vertexsets_to_json(const std::vector<VertexSet>& sets) {
    ordered_json out = ordered_json::array();
    for (const auto& s : sets) out.push_back(s.ids());
    return out;
}

std::vector<VertexSet> vertexsets_from_json(const ordered_json& arr) {
    std::vector<VertexSet> out;
    for (const auto& s : arr) out.emplace_back(s.get<std::vector<int>>());
    return out;
}

ordered_json config_to_json(const RegularityConfig& cfg) {
    ordered_json j;
    j["epsilon"] = cfg.epsilon;
    j["l"] = cfg.l;
    j["h"] = cfg.effective_h();
    j["checker"] = to_string(cfg.checker);
    j["seed"] = cfg.seed;
    j["max_iters"] = cfg.max_iters;
    return j;
}

RegularityConfig config_from_json(const ordered_json& j) {
    RegularityConfig cfg;
    cfg.epsilon = j.at("epsilon").get<double>();
    cfg.l = j.at("l").get<int>();
    cfg.h = j.at("h").get<int>();
    cfg.checker = checker_from_string(j.at("checker").get<std::string>());
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.max_iters = j.at("max_iters").get<int>();
    return cfg;
}

}  // namespace


namespace {

/// Runs a JSON-reading body, translating nlohmann exceptions (missing keys,
/// wrong types) into DataError.
template <typename Fn>
auto with_json_errors(const char* what, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

std::string graph_to_json(const AffinityGraph& g) {
    ordered_json j;
    j["n"] = g.size();
    j["mode"] = to_string(g.mode());
    j["weights"] = matrix_to_json(g.weights());
    return j.dump();
}

AffinityGraph graph_from_json(const std::string& text) {
    try {
        return with_json_errors("graph JSON", [&] {
        ordered_json j = ordered_json::parse(text, nullptr, false);
        if (j.is_discarded()) throw DataError("graph JSON: parse error");
        Eigen::MatrixXd w = matrix_from_json(j.at("weights"));
        const auto mode = mode_from_string(j.at("mode").get<std::string>());
        if (j.at("n").get<Eigen::Index>() != w.rows()) {
            throw DataError("graph JSON: n does not match the weight matrix");
        }
        return AffinityGraph(std::move(w), mode);
    });
    } catch (const InvalidArgument& e) {
        throw DataError(std::string("graph JSON: ") + e.what());
    }
}

namespace {
constexpr char kGraphMagic[4] = {'R', 'G', 'C', 'M'};
}

void save_graph_binary(const AffinityGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out.write(kGraphMagic, 4);
    const std::uint32_t version = 1;
    const std::uint32_t n = static_cast<std::uint32_t>(g.size());
    const std::uint8_t mode = g.mode() == AffinityGraph::Mode::binary ? 0 : 1;
    out.write(reinterpret_cast<const char*>(&version), sizeof version);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&mode), sizeof mode);
    out.write(reinterpret_cast<const char*>(g.weights().data()),
              static_cast<std::streamsize>(sizeof(double) * n * n));
    if (!out) throw DataError("short write to " + path);
}

AffinityGraph load_graph_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    char magic[4];
    std::uint32_t version = 0, n = 0;
    std::uint8_t mode = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&mode), sizeof mode);
    if (!in || std::memcmp(magic, kGraphMagic, 4) != 0 || version != 1) {
        throw DataError(path + " is not a graph matrix dump");
    }
    Eigen::MatrixXd w(n, n);
    in.read(reinterpret_cast<char*>(w.data()),
            static_cast<std::streamsize>(sizeof(double) * n * n));
    if (!in) throw DataError("short read from " + path);
    return AffinityGraph(std::move(w), mode == 0 ? AffinityGraph::Mode::binary
                                                 : AffinityGraph::Mode::weighted);
}

void save_graph(const AffinityGraph& g, const std::string& path,
                const std::string& format) {
    if (format == "json") {
        write_text_file(path, graph_to_json(g));
    } else if (format == "bin") {
        save_graph_binary(g, path);
    } else {
        throw InvalidArgument("save_graph: unknown format " + format);
    }
}

AffinityGraph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    in.close();
    if (std::memcmp(magic, kGraphMagic, 4) == 0) return load_graph_binary(path);
    return graph_from_json(read_text_file(path));
}

std::string partition_to_json(const PprResult& result, const RegularityConfig& cfg) {
    const EquitablePartition& p = result.partition;
    ordered_json j;
    j["k"] = p.k();
    j["class_size"] = p.class_size;
    j["classes"] = vertexsets_to_json(p.classes);
    j["exceptional"] = p.exceptional.ids();
    ordered_json trace = ordered_json::array();
    for (const auto& r : result.trace.records) {
        ordered_json rec;
        rec["iter"] = r.iteration;
        rec["k"] = r.k;
        rec["class_size"] = r.class_size;
        rec["exceptional_size"] = r.exceptional_size;
        rec["index"] = r.index;
        rec["irregular_pairs"] = r.irregular_pairs;
        rec["required_regular"] = r.required_regular;
        trace.push_back(std::move(rec));
    }
    j["trace"] = std::move(trace);
    j["halt_reason"] = to_string(result.trace.halt_reason);
    j["config"] = config_to_json(cfg);
    return j.dump();
}

PartitionFile partition_from_json(const std::string& text) {
    return with_json_errors("partition JSON", [&] {
        ordered_json j = ordered_json::parse(text, nullptr, false);
        if (j.is_discarded()) throw DataError("partition JSON: parse error");
        PartitionFile f;
        f.partition.classes = vertexsets_from_json(j.at("classes"));
        f.partition.exceptional = VertexSet(j.at("exceptional").get<std::vector<int>>());
        f.partition.class_size = j.at("class_size").get<int>();
        if (j.at("k").get<int>() != f.partition.k()) {
            throw DataError("partition JSON: k does not match class list");
        }
        for (const auto& rec : j.at("trace")) {
            TraceRecord r;
            r.iteration = rec.at("iter").get<int>();
            r.k = rec.at("k").get<int>();
            r.class_size = rec.at("class_size").get<int>();
            r.exceptional_size = rec.at("exceptional_size").get<int>();
            r.index = rec.at("index").get<double>();
            r.irregular_pairs = rec.at("irregular_pairs").get<int>();
            r.required_regular = rec.at("required_regular").get<int>();
            f.trace.records.push_back(r);
        }
        const std::string halt = j.at("halt_reason").get<std::string>();
        if (halt == "class_size_below_h") f.trace.halt_reason = HaltReason::class_size_below_h;
        else if (halt == "regularity_reached") f.trace.halt_reason = HaltReason::regularity_reached;
        else if (halt == "max_iters") f.trace.halt_reason = HaltReason::max_iters;
        else throw DataError("partition JSON: unknown halt_reason " + halt);
        f.config = config_from_json(j.at("config"));
        return f;
    });
}

std::string reduced_to_json(const ReducedGraph& r) {
    ordered_json j;
    j["k"] = r.k;
    j["weights"] = matrix_to_json(r.weights);
    j["class_map"] = vertexsets_to_json(r.class_map);
    return j.dump();
}

ReducedGraph reduced_from_json(const std::string& text) {
    return with_json_errors("reduced JSON", [&] {
        ordered_json j = ordered_json::parse(text, nullptr, false);
        if (j.is_discarded()) throw DataError("reduced JSON: parse error");
        ReducedGraph r;
        r.k = j.at("k").get<int>();
        r.weights = matrix_from_json(j.at("weights"));
        r.class_map = vertexsets_from_json(j.at("class_map"));
        if (r.weights.rows() != r.k) throw DataError("reduced JSON: k mismatch");
        return r;
    });
}

std::string assignment_to_json(const ClusterAssignment& a) {
    ordered_json j;
    j["labels"] = a.labels;
    j["k"] = a.k_clusters;
    j["method"] = a.method;
    return j.dump();
}

ClusterAssignment assignment_from_json(const std::string& text) {
    return with_json_errors("assignment JSON", [&] {
        ordered_json j = ordered_json::parse(text, nullptr, false);
        if (j.is_discarded()) throw DataError("assignment JSON: parse error");
        ClusterAssignment a;
        a.labels = j.at("labels").get<std::vector<int>>();
        a.k_clusters = j.at("k").get<int>();
        a.method = j.at("method").get<std::string>();
        return a;
    });
}

std::string accuracy_to_json(const AccuracyReport& r) {
    ordered_json j;
    j["accuracy"] = r.accuracy;
    ordered_json mapping = ordered_json::object();
    for (const auto& [cluster, label] : r.mapping) {
        mapping[std::to_string(cluster)] = label;
    }
    j["mapping"] = std::move(mapping);
    ordered_json confusion = ordered_json::array();
    for (Eigen::Index i = 0; i < r.confusion.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index c = 0; c < r.confusion.cols(); ++c) row.push_back(r.confusion(i, c));
        confusion.push_back(std::move(row));
    }
    j["confusion"] = std::move(confusion);
    return j.dump();
}

std::vector<int> load_labels(const std::string& path) {
    const std::string text = read_text_file(path);
    // JSON assignment files are accepted too.
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (!j.is_discarded() && j.is_object() && j.contains("labels")) {
        return j.at("labels").get<std::vector<int>>();
    }
    std::vector<int> labels;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        try {
            labels.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw DataError("bad label token '" + token + "' in " + path);
        }
        token.clear();
    };
    for (char c : text) {
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
            token.push_back(c);
        } else {
            flush();
        }
    }
    flush();
    if (labels.empty()) throw DataError("no labels found in " + path);
    return labels;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << content;
    if (!out) throw DataError("short write to " + path);
}

}  // namespace regc
