#include "kca/correlated.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kca/error.hpp"

namespace kca {

CorrelationParams::CorrelationParams(double p00_, double p01_, double p10_, double p11_)
    : p00(p00_), p01(p01_), p10(p10_), p11(p11_) {
    require_config(p00 >= 0 && p01 >= 0 && p10 >= 0 && p11 >= 0,
                   "correlation params: entries must be nonnegative");
    double sum = p00 + p01 + p10 + p11;
    require_config(std::abs(sum - 1.0) <= 1e-12,
                   "correlation params: entries must sum to 1, got " +
                       std::to_string(sum));
}

namespace {

// Walks the row-major sequence of unordered pairs (i, j), i < j, over [n].
struct PairCursor {
    int n;
    int i = 0;
    std::int64_t j_off = 0;  // j = i + 1 + j_off

    bool advance(std::int64_t steps) {  // false once past the end
        j_off += steps;
        while (i < n - 1 && j_off >= n - 1 - i) {
            j_off -= n - 1 - i;
            ++i;
        }
        return i < n - 1;
    }
    int j() const { return i + 1 + static_cast<int>(j_off); }
};

// Conditional cell draw for a hit of the sparse sampler: which of the three
// edge-bearing cells occurred, given that one did.
void apply_active_cell(double u, const CorrelationParams& p, double q, bool& ea, bool& eb) {
    double c11 = p.p11 / q, c10 = p.p10 / q;
    if (u < c11) {
        ea = eb = true;
    } else if (u < c11 + c10) {
        ea = true;
        eb = false;
    } else {
        ea = false;
        eb = true;
    }
}

}  // namespace

CorrelatedPair sample_pair(const Matching& mu_star, int n, const CorrelationParams& p,
                           SeededRng& rng, SamplerMode mode, bool strict) {
    const bool bijection = mu_star.is_bijection(n);
    if (strict)
        require_config(bijection, "sample_pair: mu_star must be a bijection on [n]");
    if (mode == SamplerMode::sparse)
        require_config(bijection, "sample_pair: sparse mode needs a bijection");
    if (mode == SamplerMode::automatic)
        mode = (bijection && p.active() < kSparseSamplerThreshold) ? SamplerMode::sparse
                                                                   : SamplerMode::dense;

    std::vector<std::pair<int, int>> ea, eb;
    if (mode == SamplerMode::sparse) {
        const double q = p.active();
        if (q > 0.0) {
            PairCursor cur{n};
            if (cur.advance(rng.next_geometric_skip(q))) {
                while (true) {
                    bool a, b;
                    apply_active_cell(rng.next_unit(), p, q, a, b);
                    int i = cur.i, j = cur.j();
                    if (a) ea.emplace_back(i, j);
                    if (b) {
                        int bi = *mu_star.image_of(i), bj = *mu_star.image_of(j);
                        eb.emplace_back(std::min(bi, bj), std::max(bi, bj));
                    }
                    if (!cur.advance(1 + rng.next_geometric_skip(q))) break;
                }
            }
        }
    } else {
        // Dense: one draw per lifted pair; leftover coordinates (partial
        // matchings only) from the marginals.
        const double c11 = p.p11, c10 = p.p11 + p.p10, c01 = p.p11 + p.p10 + p.p01;
        std::vector<bool> right_matched(n, false);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                auto bi = mu_star.image_of(i), bj = mu_star.image_of(j);
                if (bi && bj) {
                    double u = rng.next_unit();
                    if (u < c10) ea.emplace_back(i, j);
                    if (u < c11 || (u >= c10 && u < c01))
                        eb.emplace_back(std::min(*bi, *bj), std::max(*bi, *bj));
                } else {
                    if (rng.next_unit() < p.p1_star()) ea.emplace_back(i, j);
                }
            }
        if (!bijection) {
            for (auto [a, b] : mu_star.pairs()) {
                require_config(a < n && b < n, "sample_pair: pair id out of range");
                right_matched[b] = true;
            }
            for (int x = 0; x < n; ++x)
                for (int y = x + 1; y < n; ++y)
                    if (!(right_matched[x] && right_matched[y]))
                        if (rng.next_unit() < p.pstar_1()) eb.emplace_back(x, y);
        }
    }
    return {Graph(n, std::move(ea)), Graph(n, std::move(eb))};
}

Graph sample_er(int n, double p, SeededRng& rng, SamplerMode mode) {
    require_config(p >= 0.0 && p <= 1.0, "sample_er: p out of [0,1]");
    if (mode == SamplerMode::automatic)
        mode = p < kSparseSamplerThreshold ? SamplerMode::sparse : SamplerMode::dense;
    std::vector<std::pair<int, int>> edges;
    if (mode == SamplerMode::sparse) {
        if (p > 0.0) {
            PairCursor cur{n};
            if (cur.advance(rng.next_geometric_skip(p))) {
                while (true) {
                    edges.emplace_back(cur.i, cur.j());
                    if (!cur.advance(1 + rng.next_geometric_skip(p))) break;
                }
            }
        }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.next_unit() < p) edges.emplace_back(i, j);
    }
    return Graph(n, std::move(edges));
}

Matching sample_uniform_bijection(int n, SeededRng& rng) {
    std::vector<int> image(n);
    for (int i = 0; i < n; ++i) image[i] = i;
    rng.shuffle(image);
    std::vector<std::pair<int, int>> pairs(n);
    for (int i = 0; i < n; ++i) pairs[i] = {i, image[i]};
    return Matching(std::move(pairs));
}

AchievabilityRegime check_achievability_regime(int n, const CorrelationParams& p,
                                               double c_corr, double density_threshold) {
    require_config(n >= 1, "regime check: n must be positive");
    AchievabilityRegime r{};
    r.degenerate = (p.p11 == 0.0 || p.p00 == 0.0);
    r.np11 = static_cast<double>(n) * p.p11;
    r.sparsity_limit = 1.0 / (8.0 * std::exp(3.0));
    double cross = p.p01 * p.p10;
    double ratio = cross == 0.0 ? 0.0
                   : p.p00 * p.p11 == 0.0
                       ? std::numeric_limits<double>::infinity()
                       : cross / (p.p00 * p.p11);
    r.correlation_term = ratio + p.p01 + p.p10;
    r.correlation_limit = std::pow(static_cast<double>(n), -c_corr);
    r.density_ok = r.np11 >= density_threshold;
    r.sparsity_ok = p.p11 <= r.sparsity_limit;
    r.correlation_ok = r.correlation_term <= r.correlation_limit;
    return r;
}

ConverseRegime check_converse_regime(int n, const CorrelationParams& p, double c_dens) {
    require_config(n >= 1, "regime check: n must be positive");
    ConverseRegime r{};
    r.degenerate = (p.p11 == 0.0 || p.p00 == 0.0);
    r.p11_limit = c_dens / static_cast<double>(n);
    r.density_ok = p.p11 <= r.p11_limit;
    double cross = p.p01 * p.p10, diag = p.p11 * p.p00;
    r.correlation_ratio = cross == 0.0 ? 0.0
                          : diag == 0.0 ? std::numeric_limits<double>::infinity()
                                        : cross / diag;
    r.correlation_ok = cross < diag;
    return r;
}

}  // namespace kca
