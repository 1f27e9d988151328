#ifndef KCA_BOUNDS_HPP
#define KCA_BOUNDS_HPP

#include <cstdint>

#include "kca/correlated.hpp"

namespace kca {

// Closed-form minimization of f(z) = exp(q2(z^2-1) + q1(z-1)) z^(-tau) over
// z > 0. z_star is the positive stationary point (2*q2*z^2 + q1*z = tau) and
// zeta = max(sqrt(2)*e*q1/tau, 4*e*sqrt(q2/tau)) dominates min f: f(z_star)
// <= zeta^tau. Requires tau > 0, q1, q2 >= 0, (q1, q2) != (0, 0).
struct ChernoffSolution {
    double q1, q2, tau;
    double z_star;
    double zeta;
    double log_bound;  // tau * log(zeta)
};

ChernoffSolution chernoff_optimize(double q1, double q2, double tau);

// Tail and union bounds for the weighted-degree statistic of a wrong-pair
// set of size d against a ground-truth bijection on [n].
struct BoundReport {
    int n = 0;
    int k = 0;
    int d = 0;                  // wrong-pair count (worst case for xi)
    long long t_cyc21 = 0;      // region-2 2-cycle count (worst case for xi)
    double t_tilde = 0;         // d*(n-1) - 2*t_cyc21
    double q1 = 0, q2 = 0, tau = 0;
    double z_star = 0, zeta = 0;
    double log_tail_bound = 0;  // log P[M >= k*d] bound, clamped <= 0
    double xi = 0;              // max over d of the per-pair rate
    double union_bound = 0;     // exp(n^2 * xi) - 1, may be +inf
};

// P[M >= k*d] <= min(1, zeta^tau) with tau = d*k/2,
//   q2 = (t_tilde/4) * p11^2,
//   q1 = t_cyc21 * p11 + (t_tilde/2) * (p1*p*1 - p11^2).
// Valid for any matching with d wrong pairs and the given 2-cycle count;
// k = 0 yields the trivial bound 1.
BoundReport tail_bound(int n, int d, int k, const CorrelationParams& p,
                       long long t_cyc21);

// xi = max over d in 1..n and t_cyc21 in {0..floor(d/2)} of
// exp(log_tail_bound / d); both zeta branches are monotone in t_cyc21, so
// the extremes of the range suffice. union_bound = exp(n^2 * xi) - 1 bounds
// the probability that any k-core alignment contains a wrong pair.
BoundReport xi_and_union_bound(int n, int k, const CorrelationParams& p);

// floor(n*p11 * (1 - (n*p11)^(-1/4))); requires n*p11 > 1.
int recommended_k(int n, double p11);

}  // namespace kca

#endif
