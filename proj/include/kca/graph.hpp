#ifndef KCA_GRAPH_HPP
#define KCA_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

namespace kca {

// Simple undirected graph on dense vertex ids 0..n-1. Immutable after
// construction; edges live both in a hash set (O(1) membership) and in a
// CSR adjacency (cache-friendly iteration).
class Graph {
public:
    Graph() = default;
    // Validates: ids in range, no self-loops, no duplicate edges.
    Graph(int n, std::vector<std::pair<int, int>> edge_list);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    bool has_edge(int u, int v) const;
    int degree(int v) const { return adj_off_[v + 1] - adj_off_[v]; }
    std::span<const int> neighbors(int v) const {
        return {adj_flat_.data() + adj_off_[v],
                adj_flat_.data() + adj_off_[v + 1]};
    }
    // Canonical edge list: each edge as (lo, hi), sorted ascending.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool operator==(const Graph& o) const {
        return n_ == o.n_ && edges_ == o.edges_;
    }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> adj_flat_;
    std::vector<int> adj_off_{0};
    std::unordered_set<std::uint64_t> edge_set_;
};

// nullopt encodes an infinite minimum degree: the graph with no vertices
// vacuously exceeds every degree threshold.
std::optional<int> min_degree(const Graph& g);
bool min_degree_at_least(const Graph& g, int k);

// Largest vertex set whose induced subgraph has min degree >= k, as sorted
// ids (empty when no such set exists). Bucket-queue peeling, O(V + E).
std::vector<int> k_core(const Graph& g, int k);

// Subgraph induced by `vertices` (ascending, duplicate-free); vertex i of
// the result is vertices[i].
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

// Tensor (categorical) product: vertex (ua, ub) has id ua*b.n + ub; edge
// between (ua, ub) and (va, vb) iff {ua,va} in a and {ub,vb} in b.
Graph tensor_product(const Graph& a, const Graph& b);

}  // namespace kca

#endif
