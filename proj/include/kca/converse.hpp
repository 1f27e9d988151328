#ifndef KCA_CONVERSE_HPP
#define KCA_CONVERSE_HPP

#include <vector>

#include "kca/correlated.hpp"
#include "kca/graph.hpp"
#include "kca/matching.hpp"
#include "kca/rng.hpp"

namespace kca {

// Exact posterior over all n! bijections given an observed pair (ga, gb):
// P(bijection | ga, gb) proportional to the product over lifted pairs of the
// cell probability of the observed (left edge, right edge) values, which
// reduces to (p11*p00/(p10*p01))^(intersection edge count) times a constant.
struct PosteriorTable {
    int n = 0;
    // Image vectors in lexicographic order with their posterior mass.
    std::vector<std::pair<std::vector<int>, double>> entries;

    double prob_of(const Matching& bijection) const;
    // Lexicographically least maximizer.
    const std::vector<int>& argmax_image() const;
};

// Requires every cell of p strictly positive and n <= n_limit.
PosteriorTable exact_posterior(const Graph& ga, const Graph& gb,
                               const CorrelationParams& p, int n_limit = 7);

// Relabeling a bijection m by a permutation pi of its pair indices: pair i
// contributes (left of pair i, right of pair pi(i)).
Matching gamma_extract(const std::vector<int>& pi, const Matching& m);

// All adjacency-preserving vertex permutations, brute force; n_limit gates
// the factorial search.
std::vector<std::vector<int>> graph_automorphisms(const Graph& g, int n_limit = 8);

struct IntersectionSymmetryCheck {
    bool holds;          // every automorphism relabel has posterior >= base
    int automorphisms;   // |Aut| of the aligned intersection
    double base_prob;    // posterior of the base bijection
    double min_margin;   // min over relabels of (relabel prob - base prob)
};

// Verifies on one instance that relabeling the true bijection by any
// automorphism of its aligned intersection never lowers the posterior.
IntersectionSymmetryCheck verify_intersection_symmetry(const Graph& ga, const Graph& gb,
                                                    const Matching& bijection,
                                                    const CorrelationParams& p);

struct ListSuccessBound {
    double best_list_prob;  // mass of the best list_len outcomes
    double rank_bound;      // E[min(1, list_len / #{y: P(y) >= P(Y)})]
};

// For a finite distribution, the best list of list_len outcomes captures at
// most rank_bound mass. Ties are grouped by exact probability equality.
ListSuccessBound max_list_success(const std::vector<double>& probs, int list_len);

struct IsolatedStats {
    int n = 0;
    double p = 0;
    int trials = 0;
    double empirical_mean = 0;
    double expected_mean = 0;  // n * (1-p)^(n-1)
    double std_error = 0;      // sample std / sqrt(trials)
    double z_score = 0;
};

IsolatedStats isolated_stats(int n, double p, int trials, SeededRng& rng);

struct PartialRecoveryReport {
    int n = 0;
    long long eps = 0;  // tolerated wrong pairs
    int trials = 0;
    double mean_success_bound = 0;  // E[min(1, eps! / isolated!)]
    double mean_isolated = 0;
    double min_isolated = 0;
    bool regime_ok = false;  // converse regime check on (n, p); warning only
};

// Monte Carlo upper bound on the success probability of any estimator that
// may leave at most eps wrong pairs: the intersection graph's isolated
// vertices are interchangeable, so at least isolated! bijections share the
// observation's likelihood and min(1, eps!/isolated!) bounds each trial.
PartialRecoveryReport partial_recovery_converse_check(int n, const CorrelationParams& p,
                                                      long long eps, int trials,
                                                      SeededRng& rng);

}  // namespace kca

#endif
