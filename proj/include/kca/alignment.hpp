#ifndef KCA_ALIGNMENT_HPP
#define KCA_ALIGNMENT_HPP

#include <optional>
#include <utility>
#include <vector>

#include "kca/correlated.hpp"
#include "kca/graph.hpp"
#include "kca/matching.hpp"

namespace kca {

struct AlignmentVerdict {
    bool is_alignment;
    // A pair of m whose intersection degree is < k (degree witness).
    std::optional<std::pair<int, int>> violating_pair;
    // A pair outside m that belongs to some extension keeping min degree
    // >= k (maximality witness).
    std::optional<std::pair<int, int>> extension_witness;
};

// m is a k-core alignment iff the aligned intersection has min degree >= k
// and no strict superset of m keeps min degree >= k. The superset check
// searches whole extension sets, not just single pairs: two added pairs can
// support each other while each alone falls short. Pairs already in m never
// need re-checking, their induced degrees only grow under extension.
AlignmentVerdict is_k_core_alignment(const Graph& ga, const Graph& gb,
                                     const Matching& m, int k);

// All k-core alignments, lexicographically ordered by pair list.
// Exhaustive search over matchings with degree-deficit pruning; throws
// ConfigError beyond n_limit vertices on either side.
std::vector<Matching> enumerate_k_core_alignments(const Graph& ga, const Graph& gb,
                                                  int k, int n_limit = 8);

// Heuristic: peel pairs whose intersection degree is < k, then greedily add
// pairs whose degree reaches k, until stable. Output satisfies min degree
// >= k; no maximality or optimality claim. k = 0 returns the seed unchanged.
Matching kcore_align_greedy(const Graph& ga, const Graph& gb, int k,
                            const Matching& seed);

// Diagnostic with ground truth: mu_star restricted to the k-core of the
// intersection aligned by mu_star itself.
Matching oracle_kcore_estimate(const Graph& ga, const Graph& gb,
                               const Matching& mu_star, int k);

struct MStatistic {
    long long value;  // sum of intersection degrees over pairs of m \ mu_star
    int d;            // |m \ mu_star|
    int k;
    // A min-degree->=k intersection forces value >= k*d; this weaker test is
    // what the tail bounds control.
    bool weak_alignment() const { return value >= static_cast<long long>(k) * d; }
};

MStatistic m_statistic(const Graph& ga, const Graph& gb, const Matching& m,
                       const Matching& mu_star, int k);

// Same statistic summed over intersection edges, weighting each edge by how
// many of its endpoints lie in m \ mu_star. Must agree with m_statistic.
long long m_statistic_edge_form(const Graph& ga, const Graph& gb,
                                const Matching& m, const Matching& mu_star);

// m plus every pair of mu_star whose endpoints are both uncovered by m.
// Leaves |result \ mu_star| = |m \ mu_star| while making m maximal
// relative to mu_star.
Matching mu_star_maximal_extension(const Matching& m, const Matching& mu_star);

struct MapEstimate {
    Matching matching;         // lexicographically least argmax
    long long best_edge_count;  // intersection edges of the argmax
    long long tie_count;        // bijections attaining the max
};

// Exhausts all n! bijections and maximizes the aligned intersection's edge
// count, the posterior-maximizing rule under positive correlation.
MapEstimate map_estimate_bruteforce(const Graph& ga, const Graph& gb,
                                    const CorrelationParams& p, int n_limit = 8);

}  // namespace kca

#endif
