#include "kca/alignment.hpp"

#include <algorithm>
#include <string>

#include "kca/error.hpp"

namespace kca {

namespace {

// Degree a candidate pair (a, b) would have in the intersection aligned by
// base (b not yet in base).
int degree_into(const Graph& ga, const Graph& gb, const Matching& base, int a, int b) {
    int deg = 0;
    for (auto [u, v] : base.pairs())
        if (ga.has_edge(a, u) && gb.has_edge(b, v)) ++deg;
    return deg;
}

struct ExtensionSearch {
    const Graph& ga;
    const Graph& gb;
    const Matching& base;
    int k;
    std::vector<std::pair<int, int>> cands;  // surviving candidate pairs, lex order
    std::vector<int> base_deg;               // candidate degree into base
    std::vector<std::pair<int, int>> chosen;
    std::vector<int> chosen_deg;  // degree of chosen[i] into base + chosen

    bool found = false;
    std::vector<std::pair<int, int>> witness;

    ExtensionSearch(const Graph& ga_, const Graph& gb_, const Matching& base_, int k_)
        : ga(ga_), gb(gb_), base(base_), k(k_) {
        std::vector<char> used_a(ga.num_vertices(), 0), used_b(gb.num_vertices(), 0);
        for (auto [a, b] : base.pairs()) {
            used_a[a] = 1;
            used_b[b] = 1;
        }
        std::vector<int> free_a_nbrs(ga.num_vertices(), 0), free_b_nbrs(gb.num_vertices(), 0);
        for (int a = 0; a < ga.num_vertices(); ++a)
            for (int u : ga.neighbors(a))
                if (!used_a[u]) ++free_a_nbrs[a];
        for (int b = 0; b < gb.num_vertices(); ++b)
            for (int v : gb.neighbors(b))
                if (!used_b[v]) ++free_b_nbrs[b];
        for (int a = 0; a < ga.num_vertices(); ++a) {
            if (used_a[a]) continue;
            for (int b = 0; b < gb.num_vertices(); ++b) {
                if (used_b[b]) continue;
                int bd = degree_into(ga, gb, base, a, b);
                // Even with every free neighbor matched favorably this pair
                // cannot reach degree k: discard it outright.
                if (bd + std::min(free_a_nbrs[a], free_b_nbrs[b]) < k) continue;
                cands.emplace_back(a, b);
                base_deg.push_back(bd);
            }
        }
    }

    bool feasible_from(std::size_t idx) {
        if (!chosen.empty()) {
            bool all_ok = true;
            for (int dg : chosen_deg)
                if (dg < k) {
                    all_ok = false;
                    break;
                }
            if (all_ok) {
                found = true;
                witness = chosen;
                return true;
            }
            // Prune: some chosen pair cannot reach k even if every
            // remaining candidate adjacent to it were added.
            for (std::size_t t = 0; t < chosen.size(); ++t) {
                if (chosen_deg[t] >= k) continue;
                int potential = chosen_deg[t];
                for (std::size_t j = idx; j < cands.size() && potential < k; ++j)
                    if (ga.has_edge(chosen[t].first, cands[j].first) &&
                        gb.has_edge(chosen[t].second, cands[j].second))
                        ++potential;
                if (potential < k) return false;
            }
        }
        for (std::size_t j = idx; j < cands.size(); ++j) {
            auto [a, b] = cands[j];
            bool clash = false;
            for (auto [ca, cb] : chosen)
                if (ca == a || cb == b) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            int deg = base_deg[j];
            for (std::size_t t = 0; t < chosen.size(); ++t)
                if (ga.has_edge(a, chosen[t].first) && gb.has_edge(b, chosen[t].second)) {
                    ++deg;
                    ++chosen_deg[t];
                }
            chosen.emplace_back(a, b);
            chosen_deg.push_back(deg);
            if (feasible_from(j + 1)) return true;
            chosen.pop_back();
            chosen_deg.pop_back();
            for (std::size_t t = 0; t < chosen.size(); ++t)
                if (ga.has_edge(a, chosen[t].first) && gb.has_edge(b, chosen[t].second))
                    --chosen_deg[t];
        }
        return false;
    }
};

// First pair of the lexicographically first extension set that keeps min
// degree >= k, or nullopt when base is maximal.
std::optional<std::pair<int, int>> find_feasible_extension(const Graph& ga,
                                                           const Graph& gb,
                                                           const Matching& base, int k) {
    ExtensionSearch search(ga, gb, base, k);
    if (search.feasible_from(0) && !search.witness.empty()) return search.witness.front();
    return std::nullopt;
}

void validate_over(const Graph& ga, const Graph& gb, const Matching& m, const char* op) {
    for (auto [a, b] : m.pairs()) {
        require_config(a < ga.num_vertices(),
                       std::string(op) + ": left id out of range");
        require_config(b < gb.num_vertices(),
                       std::string(op) + ": right id out of range");
    }
}

}  // namespace

AlignmentVerdict is_k_core_alignment(const Graph& ga, const Graph& gb,
                                     const Matching& m, int k) {
    require_config(k >= 0, "is_k_core_alignment: k must be nonnegative");
    validate_over(ga, gb, m, "is_k_core_alignment");
    AlignmentVerdict v{true, std::nullopt, std::nullopt};
    Graph h = aligned_intersection(ga, gb, m);
    for (int i = 0; i < h.num_vertices(); ++i)
        if (h.degree(i) < k) {
            v.is_alignment = false;
            v.violating_pair = m.pair(i);
            break;
        }
    if (v.is_alignment) {
        v.extension_witness = find_feasible_extension(ga, gb, m, k);
        if (v.extension_witness) v.is_alignment = false;
    }
    return v;
}

namespace {

struct AlignmentEnumerator {
    const Graph& ga;
    const Graph& gb;
    int k;
    std::vector<std::pair<int, int>> all_pairs;
    std::vector<std::pair<int, int>> cur;
    std::vector<int> cur_deg;
    std::vector<char> used_a, used_b;
    std::vector<Matching> found;  // min degree >= k, in lex DFS order

    AlignmentEnumerator(const Graph& ga_, const Graph& gb_, int k_)
        : ga(ga_), gb(gb_), k(k_), used_a(ga.num_vertices(), 0),
          used_b(gb.num_vertices(), 0) {
        for (int a = 0; a < ga.num_vertices(); ++a)
            for (int b = 0; b < gb.num_vertices(); ++b)
                all_pairs.emplace_back(a, b);
    }

    void search(std::size_t idx) {
        bool all_ok = true;
        for (int dg : cur_deg)
            if (dg < k) {
                all_ok = false;
                break;
            }
        if (all_ok) found.push_back(Matching(cur));
        // Degree-deficit bound: a pair already chosen that cannot reach k
        // using any remaining compatible candidate kills the whole subtree.
        for (std::size_t t = 0; t < cur.size(); ++t) {
            if (cur_deg[t] >= k) continue;
            int potential = cur_deg[t];
            for (std::size_t j = idx; j < all_pairs.size() && potential < k; ++j) {
                auto [a, b] = all_pairs[j];
                if (used_a[a] || used_b[b]) continue;
                if (ga.has_edge(cur[t].first, a) && gb.has_edge(cur[t].second, b))
                    ++potential;
            }
            if (potential < k) return;
        }
        for (std::size_t j = idx; j < all_pairs.size(); ++j) {
            auto [a, b] = all_pairs[j];
            if (used_a[a] || used_b[b]) continue;
            int deg = 0;
            for (std::size_t t = 0; t < cur.size(); ++t)
                if (ga.has_edge(a, cur[t].first) && gb.has_edge(b, cur[t].second)) {
                    ++deg;
                    ++cur_deg[t];
                }
            cur.emplace_back(a, b);
            cur_deg.push_back(deg);
            used_a[a] = used_b[b] = 1;
            search(j + 1);
            used_a[a] = used_b[b] = 0;
            cur.pop_back();
            cur_deg.pop_back();
            for (std::size_t t = 0; t < cur.size(); ++t)
                if (ga.has_edge(a, cur[t].first) && gb.has_edge(b, cur[t].second))
                    --cur_deg[t];
        }
    }
};

}  // namespace

std::vector<Matching> enumerate_k_core_alignments(const Graph& ga, const Graph& gb,
                                                  int k, int n_limit) {
    require_config(k >= 0, "enumerate_k_core_alignments: k must be nonnegative");
    require_config(ga.num_vertices() <= n_limit && gb.num_vertices() <= n_limit,
                   "enumerate_k_core_alignments: graph exceeds n_limit = " +
                       std::to_string(n_limit));
    AlignmentEnumerator en(ga, gb, k);
    en.search(0);
    std::vector<Matching> out;
    for (auto& m : en.found)
        if (!find_feasible_extension(ga, gb, m, k)) out.push_back(std::move(m));
    // DFS visits pair lists in lexicographic order already; keep it explicit.
    std::sort(out.begin(), out.end());
    return out;
}

Matching kcore_align_greedy(const Graph& ga, const Graph& gb, int k,
                            const Matching& seed) {
    require_config(k >= 0, "kcore_align_greedy: k must be nonnegative");
    validate_over(ga, gb, seed, "kcore_align_greedy");
    if (k == 0) return seed;
    Matching m = seed;
    bool changed = true;
    while (changed) {
        changed = false;
        Graph h = aligned_intersection(ga, gb, m);
        std::vector<int> core = k_core(h, k);
        if (static_cast<int>(core.size()) < m.size()) {
            std::vector<std::pair<int, int>> kept;
            kept.reserve(core.size());
            for (int i : core) kept.push_back(m.pair(i));
            m = Matching(std::move(kept));
            changed = true;
        }
        bool added = true;
        while (added) {
            added = false;
            for (int a = 0; a < ga.num_vertices(); ++a) {
                if (m.image_of(a)) continue;
                for (int b = 0; b < gb.num_vertices(); ++b) {
                    if (m.preimage_of(b)) continue;
                    if (degree_into(ga, gb, m, a, b) >= k) {
                        auto pairs = std::vector<std::pair<int, int>>(m.pairs().begin(),
                                                                      m.pairs().end());
                        pairs.emplace_back(a, b);
                        m = Matching(std::move(pairs));
                        added = changed = true;
                        break;  // left id a is now covered
                    }
                }
            }
        }
    }
    return m;
}

Matching oracle_kcore_estimate(const Graph& ga, const Graph& gb,
                               const Matching& mu_star, int k) {
    require_config(ga.num_vertices() == gb.num_vertices(),
                   "oracle_kcore_estimate: universes must have equal size");
    require_config(mu_star.is_bijection(ga.num_vertices()),
                   "oracle_kcore_estimate: mu_star must be a bijection");
    Graph h = aligned_intersection(ga, gb, mu_star);
    std::vector<int> core = k_core(h, k);
    std::vector<std::pair<int, int>> kept;
    kept.reserve(core.size());
    for (int i : core) kept.push_back(mu_star.pair(i));
    return Matching(std::move(kept));
}

MStatistic m_statistic(const Graph& ga, const Graph& gb, const Matching& m,
                       const Matching& mu_star, int k) {
    validate_over(ga, gb, m, "m_statistic");
    Graph h = aligned_intersection(ga, gb, m);
    MStatistic st{0, 0, k};
    for (int i = 0; i < m.size(); ++i) {
        auto [a, b] = m.pair(i);
        if (!mu_star.contains(a, b)) {
            ++st.d;
            st.value += h.degree(i);
        }
    }
    return st;
}

long long m_statistic_edge_form(const Graph& ga, const Graph& gb, const Matching& m,
                                const Matching& mu_star) {
    Graph h = aligned_intersection(ga, gb, m);
    std::vector<char> wrong(m.size(), 0);
    for (int i = 0; i < m.size(); ++i) {
        auto [a, b] = m.pair(i);
        wrong[i] = !mu_star.contains(a, b);
    }
    long long total = 0;
    for (auto [i, j] : h.edges()) total += wrong[i] + wrong[j];
    return total;
}

Matching mu_star_maximal_extension(const Matching& m, const Matching& mu_star) {
    std::vector<std::pair<int, int>> pairs(m.pairs().begin(), m.pairs().end());
    for (auto [a, b] : mu_star.pairs())
        if (!m.image_of(a) && !m.preimage_of(b)) pairs.emplace_back(a, b);
    return Matching(std::move(pairs));
}

MapEstimate map_estimate_bruteforce(const Graph& ga, const Graph& gb,
                                    const CorrelationParams& p, int n_limit) {
    const int n = ga.num_vertices();
    require_config(n == gb.num_vertices(),
                   "map_estimate_bruteforce: universes must have equal size");
    require_config(n <= n_limit, "map_estimate_bruteforce: n exceeds n_limit = " +
                                     std::to_string(n_limit));
    require_config(p.positively_correlated(),
                   "map_estimate_bruteforce: needs positive correlation");
    std::vector<int> image(n), best_image;
    for (int i = 0; i < n; ++i) image[i] = i;
    long long best = -1, ties = 0;
    do {
        long long count = 0;
        for (auto [u, v] : ga.edges())
            if (gb.has_edge(image[u], image[v])) ++count;
        if (count > best) {
            best = count;
            best_image = image;
            ties = 1;
        } else if (count == best) {
            ++ties;
        }
    } while (std::next_permutation(image.begin(), image.end()));
    std::vector<std::pair<int, int>> pairs(n);
    for (int i = 0; i < n; ++i) pairs[i] = {i, best_image[i]};
    return {Matching(std::move(pairs)), best, ties};
}

}  // namespace kca
