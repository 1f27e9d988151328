#ifndef KCA_CORRELATED_HPP
#define KCA_CORRELATED_HPP

#include "kca/graph.hpp"
#include "kca/matching.hpp"
#include "kca/rng.hpp"

namespace kca {

// Joint law of one lifted pair of potential edges: pij = P(left edge = i,
// right edge = j). Entries nonnegative and summing to 1 within 1e-12.
struct CorrelationParams {
    double p00, p01, p10, p11;

    CorrelationParams(double p00, double p01, double p10, double p11);

    double p1_star() const { return p10 + p11; }  // marginal left-edge prob
    double pstar_1() const { return p01 + p11; }  // marginal right-edge prob
    double active() const { return p01 + p10 + p11; }
    bool positively_correlated() const { return p11 * p00 > p10 * p01; }
};

// Below this active mass the pair sampler walks geometric skips instead of
// touching every potential edge.
inline constexpr double kSparseSamplerThreshold = 0.01;

enum class SamplerMode { automatic, dense, sparse };

struct CorrelatedPair {
    Graph ga, gb;
};

// Draws (Ga, Gb) on n vertices each: every lifted pair of mu_star gets an
// independent draw from p. With strict=false, mu_star may be partial and
// unmatched potential edges are drawn from the marginals independently.
CorrelatedPair sample_pair(const Matching& mu_star, int n,
                           const CorrelationParams& p, SeededRng& rng,
                           SamplerMode mode = SamplerMode::automatic,
                           bool strict = true);

// Plain one-sided model: each potential edge present independently w.p. p.
Graph sample_er(int n, double p, SeededRng& rng,
                SamplerMode mode = SamplerMode::automatic);

// Uniform over the n! bijections of [n].
Matching sample_uniform_bijection(int n, SeededRng& rng);

struct AchievabilityRegime {
    bool density_ok;      // n*p11 >= density_threshold
    bool sparsity_ok;     // p11 <= 1/(8e^3), inclusive
    bool correlation_ok;  // p01*p10/(p00*p11) + p01 + p10 <= n^(-c_corr)
    bool degenerate;      // p11 == 0 or p00 == 0
    double np11;
    double sparsity_limit;
    double correlation_term;
    double correlation_limit;
    bool ok() const { return density_ok && sparsity_ok && correlation_ok; }
};

AchievabilityRegime check_achievability_regime(int n, const CorrelationParams& p,
                                               double c_corr = 0.25,
                                               double density_threshold = 10.0);

struct ConverseRegime {
    bool density_ok;      // p11 <= c_dens / n
    bool correlation_ok;  // p01*p10 / (p11*p00) < 1, strict
    bool degenerate;      // p11 == 0 or p00 == 0
    double p11_limit;
    double correlation_ratio;
    bool ok() const { return density_ok && correlation_ok; }
};

ConverseRegime check_converse_regime(int n, const CorrelationParams& p,
                                     double c_dens = 1.0);

}  // namespace kca

#endif
