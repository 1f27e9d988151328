#include "kca/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kca/error.hpp"

namespace kca {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    require_config(!j.is_discarded(), std::string(what) + ": malformed JSON");
    return j;
}

void reject_unknown_fields(const json& j, std::initializer_list<const char*> allowed,
                           const char* what) {
    require_config(j.is_object(), std::string(what) + ": expected a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (item.key() == a) known = true;
        require_config(known, std::string(what) + ": unknown field \"" +
                                  item.key() + "\"");
    }
}

int get_int(const json& j, const char* key, const char* what) {
    require_config(j.contains(key),
                   std::string(what) + ": missing field \"" + key + "\"");
    const json& v = j.at(key);
    require_config(v.is_number_integer(),
                   std::string(what) + ": field \"" + key + "\" must be an integer");
    return v.get<int>();
}

double get_number(const json& j, const char* key, const char* what) {
    require_config(j.contains(key),
                   std::string(what) + ": missing field \"" + key + "\"");
    const json& v = j.at(key);
    require_config(v.is_number(),
                   std::string(what) + ": field \"" + key + "\" must be a number");
    return v.get<double>();
}

std::vector<std::pair<int, int>> get_int_pairs(const json& j, const char* key,
                                               const char* what) {
    require_config(j.contains(key),
                   std::string(what) + ": missing field \"" + key + "\"");
    const json& arr = j.at(key);
    require_config(arr.is_array(),
                   std::string(what) + ": field \"" + key + "\" must be an array");
    std::vector<std::pair<int, int>> out;
    out.reserve(arr.size());
    for (const json& e : arr) {
        require_config(e.is_array() && e.size() == 2 &&
                           e[0].is_number_integer() && e[1].is_number_integer(),
                       std::string(what) + ": entries of \"" + key +
                           "\" must be [int, int]");
        out.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return out;
}

bool has_json_extension(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

}  // namespace

Graph graph_from_json(const std::string& text) {
    json j = parse_json(text, "graph");
    reject_unknown_fields(j, {"n", "edges"}, "graph");
    int n = get_int(j, "n", "graph");
    return Graph(n, get_int_pairs(j, "edges", "graph"));
}

std::string graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    json j{{"n", g.num_vertices()}, {"edges", std::move(edges)}};
    return j.dump();
}

Graph graph_from_edge_text(const std::string& text) {
    std::istringstream in(text);
    long long n = 0;
    require_config(static_cast<bool>(in >> n),
                   "graph text: first token must be the vertex count");
    require_config(n >= 0 && n <= 1'000'000'000, "graph text: vertex count out of range");
    std::vector<std::pair<int, int>> edges;
    long long u, v;
    while (in >> u) {
        require_config(static_cast<bool>(in >> v),
                       "graph text: dangling endpoint at end of file");
        require_config(u >= 0 && u < n && v >= 0 && v < n,
                       "graph text: endpoint out of range");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    require_config(in.eof(), "graph text: non-integer token");
    return Graph(static_cast<int>(n), std::move(edges));
}

std::string graph_to_edge_text(const Graph& g) {
    std::ostringstream out;
    out << g.num_vertices() << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

Matching matching_from_json(const std::string& text) {
    json j = parse_json(text, "matching");
    reject_unknown_fields(j, {"pairs"}, "matching");
    return Matching(get_int_pairs(j, "pairs", "matching"));
}

std::string matching_to_json(const Matching& m) {
    json pairs = json::array();
    for (const auto& [a, b] : m.pairs()) pairs.push_back({a, b});
    json j{{"pairs", std::move(pairs)}};
    return j.dump();
}

CorrelationParams params_from_json(const std::string& text) {
    json j = parse_json(text, "params");
    reject_unknown_fields(j, {"p00", "p01", "p10", "p11"}, "params");
    return CorrelationParams(get_number(j, "p00", "params"),
                             get_number(j, "p01", "params"),
                             get_number(j, "p10", "params"),
                             get_number(j, "p11", "params"));
}

std::string params_to_json(const CorrelationParams& p) {
    json j{{"p00", p.p00}, {"p01", p.p01}, {"p10", p.p10}, {"p11", p.p11}};
    return j.dump();
}

Graph load_graph(const std::string& path) {
    std::string text = read_text_file(path);
    return has_json_extension(path) ? graph_from_json(text)
                                    : graph_from_edge_text(text);
}

void save_graph(const Graph& g, const std::string& path) {
    write_text_file(path, has_json_extension(path) ? graph_to_json(g)
                                                   : graph_to_edge_text(g));
}

Matching load_matching(const std::string& path) {
    return matching_from_json(read_text_file(path));
}

void save_matching(const Matching& m, const std::string& path) {
    write_text_file(path, matching_to_json(m));
}

CorrelationParams load_params(const std::string& path) {
    return params_from_json(read_text_file(path));
}

void save_params(const CorrelationParams& p, const std::string& path) {
    write_text_file(path, params_to_json(p));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require_config(in.good(), "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    require_config(!in.bad(), "read error on file: " + path);
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require_config(out.good(), "cannot open file for writing: " + path);
    out << content;
    out.flush();
    require_config(out.good(), "write error on file: " + path);
}

}  // namespace kca
