#include "kca/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kca/error.hpp"

namespace kca {

ChernoffSolution chernoff_optimize(double q1, double q2, double tau) {
    require_config(tau > 0.0, "chernoff_optimize: tau must be positive");
    require_config(q1 >= 0.0 && q2 >= 0.0,
                   "chernoff_optimize: coefficients must be nonnegative");
    require_config(q1 > 0.0 || q2 > 0.0,
                   "chernoff_optimize: q1 and q2 cannot both vanish");
    ChernoffSolution s{q1, q2, tau, 0.0, 0.0, 0.0};
    // Positive root of 2*q2*z^2 + q1*z - tau = 0 in the subtraction-free
    // form; exact when either coefficient vanishes.
    long double disc = std::sqrt(static_cast<long double>(q1) * q1 +
                                 8.0L * static_cast<long double>(tau) * q2);
    s.z_star = static_cast<double>(2.0L * tau / (static_cast<long double>(q1) + disc));
    double branch_linear = std::sqrt(2.0) * std::exp(1.0) * q1 / tau;
    double branch_quad = 4.0 * std::exp(1.0) * std::sqrt(q2 / tau);
    s.zeta = std::max(branch_linear, branch_quad);
    s.log_bound = tau * std::log(s.zeta);
    return s;
}

BoundReport tail_bound(int n, int d, int k, const CorrelationParams& p,
                       long long t_cyc21) {
    require_config(n >= 1, "tail_bound: n must be positive");
    require_config(d >= 1 && d <= n, "tail_bound: d must lie in 1..n");
    require_config(k >= 0, "tail_bound: k must be nonnegative");
    require_config(t_cyc21 >= 0 && 2 * t_cyc21 <= d,
                   "tail_bound: t_cyc21 must lie in 0..floor(d/2)");
    BoundReport r;
    r.n = n;
    r.k = k;
    r.d = d;
    r.t_cyc21 = t_cyc21;
    r.t_tilde = static_cast<double>(d) * (n - 1) - 2.0 * static_cast<double>(t_cyc21);
    double marg = p.p1_star() * p.pstar_1();
    r.q2 = r.t_tilde / 4.0 * p.p11 * p.p11;
    r.q1 = static_cast<double>(t_cyc21) * p.p11 + r.t_tilde / 2.0 * (marg - p.p11 * p.p11);
    r.tau = static_cast<double>(d) * k / 2.0;
    if (k == 0) {
        // M >= 0 always; the bound is trivially 1.
        r.z_star = 1.0;
        r.zeta = 1.0;
        r.log_tail_bound = 0.0;
        return r;
    }
    if (r.q1 <= 0.0 && r.q2 <= 0.0) {
        // Degenerate law: M = 0 almost surely, the bound vanishes.
        r.z_star = std::numeric_limits<double>::infinity();
        r.zeta = 0.0;
        r.log_tail_bound = -std::numeric_limits<double>::infinity();
        return r;
    }
    ChernoffSolution s = chernoff_optimize(r.q1, r.q2, r.tau);
    r.z_star = s.z_star;
    r.zeta = s.zeta;
    r.log_tail_bound = std::min(0.0, s.log_bound);
    return r;
}

BoundReport xi_and_union_bound(int n, int k, const CorrelationParams& p) {
    require_config(n >= 1, "xi_and_union_bound: n must be positive");
    require_config(k >= 0, "xi_and_union_bound: k must be nonnegative");
    double best_rate = -std::numeric_limits<double>::infinity();
    BoundReport best;
    for (int d = 1; d <= n; ++d) {
        const long long hi = d / 2;
        for (long long t : {0LL, hi}) {
            BoundReport r = tail_bound(n, d, k, p, t);
            // Unclamped per-wrong-pair rate: zeta^(tau/d). The clamp on
            // log_tail_bound only caps the reported probability; the union
            // bound wants the raw rate so a vacuous regime shows xi >= 1.
            double rate = r.tau * std::log(r.zeta) / d;
            if (rate > best_rate) {
                best_rate = rate;
                best = r;
            }
            if (hi == 0) break;
        }
    }
    best.xi = std::exp(best_rate);
    double exponent = static_cast<double>(n) * n * best.xi;
    best.union_bound = exponent > 700.0 ? std::numeric_limits<double>::infinity()
                                        : std::expm1(exponent);
    return best;
}

int recommended_k(int n, double p11) {
    double c = static_cast<double>(n) * p11;
    require_config(c > 1.0, "recommended_k: requires n*p11 > 1, got " +
                                std::to_string(c));
    return static_cast<int>(std::floor(c * (1.0 - std::pow(c, -0.25))));
}

}  // namespace kca
