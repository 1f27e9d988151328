#include "kca/converse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kca/error.hpp"

namespace kca {

double PosteriorTable::prob_of(const Matching& bijection) const {
    require_config(bijection.is_bijection(n),
                   "posterior lookup needs a full bijection on the table's n");
    std::vector<int> image(n);
    for (int i = 0; i < n; ++i) image[i] = bijection.pair(i).second;
    auto it = std::lower_bound(
        entries.begin(), entries.end(), image,
        [](const auto& e, const std::vector<int>& img) { return e.first < img; });
    require_invariant(it != entries.end() && it->first == image,
                      "posterior table is missing a bijection");
    return it->second;
}

const std::vector<int>& PosteriorTable::argmax_image() const {
    require_invariant(!entries.empty(), "posterior table is empty");
    const std::vector<int>* best = &entries[0].first;
    double best_p = entries[0].second;
    for (const auto& e : entries) {
        if (e.second > best_p) {
            best_p = e.second;
            best = &e.first;
        }
    }
    return *best;
}

PosteriorTable exact_posterior(const Graph& ga, const Graph& gb,
                               const CorrelationParams& p, int n_limit) {
    int n = ga.num_vertices();
    require_config(gb.num_vertices() == n,
                   "exact posterior needs graphs of equal order");
    require_config(n <= n_limit, "exact posterior: n exceeds the factorial limit");
    require_config(p.p00 > 0 && p.p01 > 0 && p.p10 > 0 && p.p11 > 0,
                   "exact posterior needs strictly positive cell probabilities");

    PosteriorTable table;
    table.n = n;
    std::vector<int> image(n);
    std::iota(image.begin(), image.end(), 0);
    double total = 0;
    do {
        double w = 1;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                bool ea = ga.has_edge(i, j);
                bool eb = gb.has_edge(image[i], image[j]);
                w *= ea ? (eb ? p.p11 : p.p10) : (eb ? p.p01 : p.p00);
            }
        }
        table.entries.emplace_back(image, w);
        total += w;
    } while (std::next_permutation(image.begin(), image.end()));
    require_invariant(total > 0, "posterior normalizer vanished");
    for (auto& e : table.entries) e.second /= total;
    return table;
}

Matching gamma_extract(const std::vector<int>& pi, const Matching& m) {
    int s = m.size();
    require_config(static_cast<int>(pi.size()) == s,
                   "relabeling permutation size must match the matching");
    std::vector<bool> seen(s, false);
    for (int v : pi) {
        require_config(v >= 0 && v < s && !seen[v],
                       "relabeling must be a permutation of pair indices");
        seen[v] = true;
    }
    std::vector<std::pair<int, int>> pairs(s);
    for (int i = 0; i < s; ++i)
        pairs[i] = {m.pair(i).first, m.pair(pi[i]).second};
    return Matching(std::move(pairs));
}

std::vector<std::vector<int>> graph_automorphisms(const Graph& g, int n_limit) {
    int n = g.num_vertices();
    require_config(n <= n_limit,
                   "automorphism search: n exceeds the factorial limit");
    std::vector<std::vector<int>> result;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (const auto& [u, v] : g.edges()) {
            if (!g.has_edge(perm[u], perm[v])) {
                ok = false;
                break;
            }
        }
        // A permutation maps edges injectively, so mapping every edge onto
        // an edge already forces a bijection on the edge set.
        if (ok) result.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return result;
}

IntersectionSymmetryCheck verify_intersection_symmetry(const Graph& ga, const Graph& gb,
                                                    const Matching& bijection,
                                                    const CorrelationParams& p) {
    require_config(p.p11 * p.p00 >= p.p10 * p.p01,
                   "intersection symmetry check needs nonnegative correlation");
    PosteriorTable table = exact_posterior(ga, gb, p);
    Graph inter = aligned_intersection(ga, gb, bijection);
    auto autos = graph_automorphisms(inter, bijection.size());

    IntersectionSymmetryCheck out;
    out.automorphisms = static_cast<int>(autos.size());
    out.base_prob = table.prob_of(bijection);
    out.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& pi : autos) {
        double q = table.prob_of(gamma_extract(pi, bijection));
        out.min_margin = std::min(out.min_margin, q - out.base_prob);
    }
    out.holds = out.min_margin >= -1e-12 * std::max(out.base_prob, 1e-300);
    return out;
}

ListSuccessBound max_list_success(const std::vector<double>& probs, int list_len) {
    require_config(list_len >= 0, "list length must be nonnegative");
    for (double q : probs)
        require_config(q >= 0, "probabilities must be nonnegative");
    std::vector<double> sorted = probs;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    ListSuccessBound out{0, 0};
    int take = std::min<int>(list_len, static_cast<int>(sorted.size()));
    for (int i = 0; i < take; ++i) out.best_list_prob += sorted[i];

    // Outcomes tied at the same probability share one rank: the count of
    // outcomes at least as likely, i.e. everything above plus the whole tie
    // group. Grouping by exact equality keeps the bound an expectation of
    // min(1, list_len / rank) rather than an order-dependent artifact.
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        double group_mass = static_cast<double>(j - i) * sorted[i];
        double rank = static_cast<double>(j);
        out.rank_bound += group_mass * std::min(1.0, list_len / rank);
        i = j;
    }
    return out;
}

namespace {

int count_isolated(const Graph& g) {
    int c = 0;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) == 0) ++c;
    return c;
}

}  // namespace

IsolatedStats isolated_stats(int n, double p, int trials, SeededRng& rng) {
    require_config(n >= 1, "isolated-vertex stats need n >= 1");
    require_config(p >= 0 && p <= 1, "edge probability must lie in [0, 1]");
    require_config(trials >= 1, "need at least one trial");

    IsolatedStats out;
    out.n = n;
    out.p = p;
    out.trials = trials;

    double sum = 0, sumsq = 0;
    for (int t = 0; t < trials; ++t) {
        Graph g = sample_er(n, p, rng);
        double x = count_isolated(g);
        sum += x;
        sumsq += x * x;
    }
    out.empirical_mean = sum / trials;
    out.expected_mean = n * std::pow(1.0 - p, n - 1);
    double var = trials > 1
                     ? std::max(0.0, (sumsq - sum * sum / trials) / (trials - 1))
                     : 0.0;
    out.std_error = std::sqrt(var / trials);
    double diff = out.empirical_mean - out.expected_mean;
    if (out.std_error > 0)
        out.z_score = diff / out.std_error;
    else
        out.z_score = diff == 0 ? 0 : std::numeric_limits<double>::infinity() *
                                          (diff > 0 ? 1 : -1);
    return out;
}

PartialRecoveryReport partial_recovery_converse_check(int n, const CorrelationParams& p,
                                                      long long eps, int trials,
                                                      SeededRng& rng) {
    require_config(n >= 1, "partial recovery check needs n >= 1");
    require_config(eps >= 0, "tolerated error count must be nonnegative");
    require_config(trials >= 1, "need at least one trial");

    PartialRecoveryReport out;
    out.n = n;
    out.eps = eps;
    out.trials = trials;
    ConverseRegime regime = check_converse_regime(n, p);
    out.regime_ok = regime.ok() && !regime.degenerate;

    // Under the planted model the aligned intersection at the true bijection
    // is an ER(n, p11) graph; its isolated vertices are interchangeable, so
    // at least isolated! bijections tie for the top posterior and any
    // estimator allowed eps wrong pairs succeeds w.p. <= min(1, eps!/isolated!).
    double log_eps_fact = std::lgamma(static_cast<double>(eps) + 1.0);
    double sum_bound = 0, sum_iso = 0;
    double min_iso = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        Graph g = sample_er(n, p.p11, rng);
        int iso = count_isolated(g);
        double log_ratio = log_eps_fact - std::lgamma(iso + 1.0);
        sum_bound += std::exp(std::min(0.0, log_ratio));
        sum_iso += iso;
        min_iso = std::min(min_iso, static_cast<double>(iso));
    }
    out.mean_success_bound = sum_bound / trials;
    out.mean_isolated = sum_iso / trials;
    out.min_isolated = min_iso;
    return out;
}

}  // namespace kca
