#ifndef KCA_GENFUNC_HPP
#define KCA_GENFUNC_HPP

#include "kca/correlated.hpp"
#include "kca/decomposition.hpp"

namespace kca {

// Path polynomial b_l(x, y) = sum over f in {0,1}^l of x^(ones) y^(adjacent
// one-pairs); cyclic variant counts adjacency around the wrap. Both via the
// transfer matrix [[1, 1], [x, x*y]]; l >= 1.
long double b_poly(int l, long double x, long double y);
long double b_poly_cyclic(int l, long double x, long double y);

// Outcome generating function of one path (resp. cycle) component with l
// lift(mu) edges: E[z^(indicator sum)] under p. a_l(z) = 1^T (PZ)^l P 1 and
// the cyclic version tr((PZ)^l) with P the cell matrix and Z = [[1,1],[1,z]].
// Domain z >= 0; l >= 1.
long double a_poly(int l, const CorrelationParams& p, long double z);
long double a_poly_cyclic(int l, const CorrelationParams& p, long double z);

// E[z^M] for the weighted-degree statistic M of a (mu, mu_star) pair:
// product of per-component factors, z for region 1 and z^2 for region 2;
// region 0 and single-edge paths contribute 1. Exact for every z >= 0.
long double gf_exact(const DecompositionStats& st, const CorrelationParams& p,
                     long double z);

// log of the closed-form domination of gf_exact for positively correlated p
// and z >= 1, parameterized by the ambient-n count t_tilde = d*(n-1) -
// 2*cycles[2][1]:
//   log bound = cycles[2][1]*p11*(z^2-1)
//             + (t_tilde/4)*(2*p1*p*1*(z^2-1) + p11^2*(z^2-1)^2).
long double gf_log_upper_bound(const DecompositionStats& st,
                               const CorrelationParams& p, long double z);
// exp of the above; may be huge but fits long double at desk scale.
long double gf_upper_bound(const DecompositionStats& st, const CorrelationParams& p,
                           long double z);

}  // namespace kca

#endif
