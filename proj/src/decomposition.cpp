#include "kca/decomposition.hpp"

#include <vector>

#include "kca/error.hpp"

namespace kca {

long long DecompositionStats::path_count(int region, int l) const {
    auto it = paths[region].find(l);
    return it == paths[region].end() ? 0 : it->second;
}

long long DecompositionStats::cycle_count(int region, int l) const {
    auto it = cycles[region].find(l);
    return it == cycles[region].end() ? 0 : it->second;
}

long long DecompositionStats::weighted_sum(int region) const {
    long long s = 0;
    for (auto [l, c] : paths[region]) s += static_cast<long long>(l) * c;
    for (auto [l, c] : cycles[region]) s += static_cast<long long>(l) * c;
    return s;
}

namespace {

struct PairIndex {
    int n;
    std::vector<long long> row_off;

    explicit PairIndex(int n_) : n(n_), row_off(n_ + 1, 0) {
        for (int i = 0; i < n; ++i) row_off[i + 1] = row_off[i] + (n - 1 - i);
    }
    long long count() const { return row_off[n]; }
    long long id(int i, int j) const {  // i != j
        if (i > j) std::swap(i, j);
        return row_off[i] + (j - i - 1);
    }
};

}  // namespace

DecompositionStats decompose(const Matching& mu, const Matching& mu_star) {
    const int n = mu_star.size();
    require_config(mu_star.is_bijection(n), "decompose: mu_star must be a bijection");
    for (auto [a, b] : mu.pairs())
        require_config(a < n && b < n, "decompose: mu id out of range");

    DecompositionStats st;
    st.n = n;
    st.n_prime = mu.size();
    Matching common = matching_intersection(mu, mu_star);
    st.n_common = common.size();
    st.d = st.n_prime - st.n_common;

    std::vector<char> common_a(n, 0), common_b(n, 0);
    for (auto [a, b] : common.pairs()) {
        common_a[a] = 1;
        common_b[b] = 1;
    }

    PairIndex px(n);
    const long long P = px.count();
    // -1 = no lift(mu) edge at this pair. lift(mu_star) edges exist at every
    // left pair; right pairs mirror them through the inverse permutation.
    std::vector<long long> a_mu(P, -1), b_mu(P, -1), a_star(P), b_star(P);
    for (int i = 0; i < n; ++i) {
        int bi = *mu_star.image_of(i);
        for (int j = i + 1; j < n; ++j) {
            int bj = *mu_star.image_of(j);
            long long wa = px.id(i, j), wb = px.id(bi, bj);
            a_star[wa] = wb;
            b_star[wb] = wa;
        }
    }
    for (int s = 0; s < mu.size(); ++s) {
        auto [as, bs] = mu.pair(s);
        for (int t = s + 1; t < mu.size(); ++t) {
            auto [at, bt] = mu.pair(t);
            long long wa = px.id(as, at), wb = px.id(bs, bt);
            a_mu[wa] = wb;
            b_mu[wb] = wa;
        }
    }

    // Pair ids back to endpoints, for region lookup.
    std::vector<int> lo(P), hi(P);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long long w = px.id(i, j);
            lo[w] = i;
            hi[w] = j;
        }
    auto region_a = [&](long long w) { return 2 - common_a[lo[w]] - common_a[hi[w]]; };
    auto region_b = [&](long long w) { return 2 - common_b[lo[w]] - common_b[hi[w]]; };

    enum Side { A, B };
    enum EdgeKind { Star, Mu };
    std::vector<char> seen_a(P, 0), seen_b(P, 0);

    // Walk from vertex v leaving via `kind`; alternation is forced because
    // every pair has at most one edge of each kind. Returns (mu edges
    // walked, star edges walked, true when the walk closed into a cycle).
    auto walk = [&](Side side0, long long v0, EdgeKind kind0, int& mu_edges,
                    int& star_edges, int region) -> bool {
        Side side = side0;
        long long v = v0;
        EdgeKind kind = kind0;
        while (true) {
            long long next = side == A ? (kind == Star ? a_star[v] : a_mu[v])
                                       : (kind == Star ? b_star[v] : b_mu[v]);
            if (next < 0) return false;  // endpoint: no edge of this kind
            (kind == Star ? star_edges : mu_edges)++;
            side = side == A ? B : A;
            v = next;
            if (side == side0 && v == v0) return true;  // closed a cycle
            (side == A ? seen_a : seen_b)[v] = 1;
            int reg = side == A ? region_a(v) : region_b(v);
            require_invariant(reg == region, "decompose: component crosses regions");
            kind = kind == Star ? Mu : Star;
        }
    };

    for (long long w = 0; w < P; ++w) {
        if (seen_a[w]) continue;
        seen_a[w] = 1;
        int region = region_a(w);
        int mu_edges = 0, star_edges = 0;
        bool cycle = walk(A, w, Star, mu_edges, star_edges, region);
        if (!cycle) {
            // w is interior or an endpoint; finish the other direction.
            walk(A, w, Mu, mu_edges, star_edges, region);
        }
        if (cycle) {
            require_invariant(mu_edges == star_edges && mu_edges >= 1,
                              "decompose: cycle must alternate evenly");
            ++st.cycles[region][mu_edges];
        } else {
            require_invariant(star_edges == mu_edges + 1,
                              "decompose: path ends must be lift(mu_star) edges");
            if (mu_edges == 0)
                ++st.p0_paths;
            else
                ++st.paths[region][mu_edges];
        }
    }

    // Region 0 is |common| identical copies of the same lifted pair set:
    // every component there is a 2-cycle.
    long long c2 = static_cast<long long>(st.n_common) * (st.n_common - 1) / 2;
    require_invariant(st.paths[0].empty(), "decompose: region 0 must have no paths");
    require_invariant(st.cycles[0].size() == static_cast<std::size_t>(c2 > 0) &&
                          st.cycle_count(0, 1) == c2,
                      "decompose: region 0 must be all 2-cycles");
    require_invariant(st.cycle_count(1, 1) == 0, "decompose: region 1 has no 2-cycles");
    require_invariant(2 * st.cycle_count(2, 1) <= st.d,
                      "decompose: too many region 2 2-cycles");
    require_invariant(st.weighted_sum(1) ==
                          static_cast<long long>(st.d) * (st.n_prime - st.d),
                      "decompose: region 1 weighted count mismatch");
    require_invariant(st.weighted_sum(2) == static_cast<long long>(st.d) * (st.d - 1) / 2,
                      "decompose: region 2 weighted count mismatch");
    return st;
}

}  // namespace kca
