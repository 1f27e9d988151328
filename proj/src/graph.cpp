#include "kca/graph.hpp"

#include <algorithm>
#include <string>

#include "kca/error.hpp"

namespace kca {

namespace {
std::uint64_t edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}
}  // namespace

Graph::Graph(int n, std::vector<std::pair<int, int>> edge_list) : n_(n) {
    require_config(n >= 0, "graph: vertex count must be nonnegative");
    edges_.reserve(edge_list.size());
    edge_set_.reserve(edge_list.size() * 2);
    for (auto [u, v] : edge_list) {
        require_config(u >= 0 && u < n_ && v >= 0 && v < n_,
                       "graph: edge endpoint out of range: (" +
                           std::to_string(u) + "," + std::to_string(v) + ")");
        require_config(u != v, "graph: self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        bool inserted = edge_set_.insert(edge_key(u, v)).second;
        require_config(inserted, "graph: duplicate edge (" + std::to_string(u) +
                                     "," + std::to_string(v) + ")");
        edges_.emplace_back(u, v);
    }
    std::sort(edges_.begin(), edges_.end());

    std::vector<int> deg(n_, 0);
    for (auto [u, v] : edges_) {
        ++deg[u];
        ++deg[v];
    }
    adj_off_.assign(n_ + 1, 0);
    for (int v = 0; v < n_; ++v) adj_off_[v + 1] = adj_off_[v] + deg[v];
    adj_flat_.resize(adj_off_[n_]);
    std::vector<int> cursor(adj_off_.begin(), adj_off_.end() - 1);
    for (auto [u, v] : edges_) {
        adj_flat_[cursor[u]++] = v;
        adj_flat_[cursor[v]++] = u;
    }
    for (int v = 0; v < n_; ++v)
        std::sort(adj_flat_.begin() + adj_off_[v], adj_flat_.begin() + adj_off_[v + 1]);
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    return edge_set_.count(edge_key(u, v)) != 0;
}

std::optional<int> min_degree(const Graph& g) {
    if (g.num_vertices() == 0) return std::nullopt;
    int best = g.degree(0);
    for (int v = 1; v < g.num_vertices(); ++v) best = std::min(best, g.degree(v));
    return best;
}

bool min_degree_at_least(const Graph& g, int k) {
    auto d = min_degree(g);
    return !d.has_value() || *d >= k;
}

std::vector<int> k_core(const Graph& g, int k) {
    const int n = g.num_vertices();
    if (k <= 0) {
        std::vector<int> all(n);
        for (int v = 0; v < n; ++v) all[v] = v;
        return all;
    }
    // Bucket queue over degrees: vert is sorted by current degree,
    // pos[v] locates v, bucket_start[d] is the first index with degree d.
    std::vector<int> deg(n);
    int max_deg = 0;
    for (int v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        max_deg = std::max(max_deg, deg[v]);
    }
    std::vector<int> bucket_start(max_deg + 2, 0);
    for (int v = 0; v < n; ++v) ++bucket_start[deg[v] + 1];
    for (int d = 0; d <= max_deg; ++d) bucket_start[d + 1] += bucket_start[d];
    std::vector<int> vert(n), pos(n);
    {
        std::vector<int> cursor(bucket_start.begin(), bucket_start.end() - 1);
        for (int v = 0; v < n; ++v) {
            pos[v] = cursor[deg[v]]++;
            vert[pos[v]] = v;
        }
    }
    int removed = 0;
    for (int i = 0; i < n; ++i) {
        int v = vert[i];
        if (deg[v] >= k) break;
        ++removed;
        for (int u : g.neighbors(v)) {
            if (deg[u] > deg[v]) {
                // Swap u down into the bucket below; all buckets between
                // deg[v] and deg[u] are untouched by this peel step.
                int du = deg[u], pu = pos[u];
                int pw = bucket_start[du];
                int w = vert[pw];
                if (u != w) {
                    std::swap(vert[pu], vert[pw]);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                ++bucket_start[du];
                --deg[u];
            }
        }
    }
    std::vector<int> core(vert.begin() + removed, vert.end());
    std::sort(core.begin(), core.end());
    return core;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    const int m = static_cast<int>(vertices.size());
    for (int i = 0; i < m; ++i) {
        require_config(vertices[i] >= 0 && vertices[i] < g.num_vertices(),
                       "induced_subgraph: vertex id out of range");
        require_config(i == 0 || vertices[i - 1] < vertices[i],
                       "induced_subgraph: vertices must be ascending and distinct");
    }
    std::vector<int> index(g.num_vertices(), -1);
    for (int i = 0; i < m; ++i) index[vertices[i]] = i;
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (index[u] >= 0 && index[v] >= 0) edges.emplace_back(index[u], index[v]);
    return Graph(m, std::move(edges));
}

Graph tensor_product(const Graph& a, const Graph& b) {
    const long long n = static_cast<long long>(a.num_vertices()) * b.num_vertices();
    require_config(n <= (1LL << 30), "tensor_product: product too large");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(2ull * a.num_edges() * b.num_edges());
    const int nb = b.num_vertices();
    for (auto [ua, va] : a.edges())
        for (auto [ub, vb] : b.edges()) {
            edges.emplace_back(ua * nb + ub, va * nb + vb);
            edges.emplace_back(ua * nb + vb, va * nb + ub);
        }
    return Graph(static_cast<int>(n), std::move(edges));
}

}  // namespace kca
