#ifndef KCA_IO_HPP
#define KCA_IO_HPP

#include <string>

#include "kca/correlated.hpp"
#include "kca/graph.hpp"
#include "kca/matching.hpp"

namespace kca {

// String-level codecs. JSON shapes:
//   Graph    {"n": 5, "edges": [[0,1], ...]}
//   Matching {"pairs": [[a,b], ...]}
//   params   {"p00": .., "p01": .., "p10": .., "p11": ..}
// Unknown fields are rejected (ConfigError), as are malformed values.
Graph graph_from_json(const std::string& text);
std::string graph_to_json(const Graph& g);

// Plain text alternative: first line n, then one "u v" line per edge.
Graph graph_from_edge_text(const std::string& text);
std::string graph_to_edge_text(const Graph& g);

Matching matching_from_json(const std::string& text);
std::string matching_to_json(const Matching& m);

CorrelationParams params_from_json(const std::string& text);
std::string params_to_json(const CorrelationParams& p);

// File-level wrappers. Graphs sniff the extension: ".json" means JSON,
// anything else the edge-list text format. Matchings and params are JSON.
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);
Matching load_matching(const std::string& path);
void save_matching(const Matching& m, const std::string& path);
CorrelationParams load_params(const std::string& path);
void save_params(const CorrelationParams& p, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace kca

#endif
