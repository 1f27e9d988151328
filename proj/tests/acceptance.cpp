// Acceptance gate: one pass/fail line per criterion, exit 1 on any failure.
// Each criterion states its tolerance inline; nothing here is tunable from
// the command line, so a green run certifies the shipped defaults.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "kca/alignment.hpp"
#include "kca/bounds.hpp"
#include "kca/converse.hpp"
#include "kca/correlated.hpp"
#include "kca/decomposition.hpp"
#include "kca/genfunc.hpp"
#include "kca/graph.hpp"
#include "kca/io.hpp"
#include "kca/matching.hpp"
#include "kca/rng.hpp"

#include "worked_instance.hpp"
#include "oracle_helpers.hpp"

using namespace kca;
using namespace kca::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

#define REQUIRE_ACC(cond, msg)                      \
    do {                                            \
        if (!(cond)) {                              \
            out.pass = false;                       \
            out.detail = msg;                       \
            return out;                             \
        }                                           \
    } while (0)

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

Graph random_graph(int n, double p, SeededRng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_unit() < p) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

Matching identity_matching(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) pairs.emplace_back(i, i);
    return Matching(std::move(pairs));
}

CorrelationParams correlated_cells(double qa, double qb, double rho) {
    double p11 = qa * qb + rho * (std::min(qa, qb) - qa * qb);
    double p10 = qa - p11;
    double p01 = qb - p11;
    return CorrelationParams(1.0 - p10 - p01 - p11, p01, p10, p11);
}

CorrelationParams random_correlated(SeededRng& rng) {
    return correlated_cells(0.1 + 0.6 * rng.next_unit(),
                            0.1 + 0.6 * rng.next_unit(),
                            0.1 + 0.8 * rng.next_unit());
}

std::pair<Matching, Matching> random_pair_instance(int n, SeededRng& rng) {
    Matching mu_star = sample_uniform_bijection(n, rng);
    while (true) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            if (rng.next_unit() < 0.8)
                pairs.emplace_back(mu_star.pair(i).first,
                                   mu_star.pair(perm[i]).second);
        Matching mu(pairs);
        if (!matching_difference(mu, mu_star).empty()) return {mu, mu_star};
    }
}

// ---- 1: worked-instance reproduction ------------------------------------

Outcome c1_worked_instance() {
    Outcome out;
    Graph ga = worked_ga();
    Graph gb = worked_gb();
    Matching mu = worked_mu();

    Graph inter = aligned_intersection(ga, gb, mu);
    REQUIRE_ACC(inter.num_edges() == 5, "intersection must have 5 edges");
    REQUIRE_ACC(min_degree(inter).value_or(-1) == 2, "min degree must be 2");
    std::vector<int> want = {3, 2, 3, 2};
    for (int i = 0; i < 4; ++i)
        REQUIRE_ACC(inter.degree(i) == want[i], "pair degree mismatch");

    REQUIRE_ACC(is_k_core_alignment(ga, gb, mu, 2).is_alignment,
                "printed matching must be a 2-core alignment");

    auto pairs = std::vector<std::pair<int, int>>(mu.pairs().begin(),
                                                  mu.pairs().end());
    pairs.push_back(worked_extra_pair());
    Graph worse = aligned_intersection(ga, gb, Matching(pairs));
    REQUIRE_ACC(min_degree(worse).value_or(-1) == 0,
                "extended matching must drop min degree to 0");
    out.detail = "5 edges, degrees 3/2/3/2, extension degree 0";
    return out;
}

// ---- 2: peeling equals the exhaustive subset oracle ----------------------

Outcome c2_kcore_oracle() {
    Outcome out;
    SeededRng rng(1002, 0);
    int graphs = 200;
    for (int g = 0; g < graphs; ++g) {
        int n = 4 + static_cast<int>(rng.next_below(9));  // 4..12
        double p = 0.1 + 0.5 * rng.next_unit();
        Graph graph = random_graph(n, p, rng);
        for (int k = 1; k <= 3; ++k)
            REQUIRE_ACC(k_core(graph, k) == kcore_subset_oracle(graph, k),
                        "peeling disagrees with the subset oracle (graph " +
                            std::to_string(g) + ", k=" + std::to_string(k) + ")");
    }
    out.detail = "200 graphs x k in {1,2,3}, exact match";
    return out;
}

// ---- 3: generating-function exactness ------------------------------------

Outcome c3_gf_exact() {
    Outcome out;
    SeededRng rng(1003, 0);
    const long double zs[] = {0.5L, 1.0L, 2.0L, 3.0L};
    long double worst = 0;
    for (int t = 0; t < 50; ++t) {
        auto [mu, mu_star] = random_pair_instance(5, rng);
        CorrelationParams p = random_correlated(rng);
        DecompositionStats st = decompose(mu, mu_star);
        MCoordinateSystem sys = build_m_coordinates(mu, mu_star);
        std::vector<long double> tally = sys.exact_tally(p);
        for (long double z : zs) {
            long double lib = gf_exact(st, p, z);
            long double ref = gf_from_tally(tally, z);
            long double rel = std::fabs(lib - ref) / std::max(std::fabs(ref), 1e-30L);
            worst = std::max(worst, rel);
            REQUIRE_ACC(rel <= 1e-10L,
                        "relative error " + fmt(double(rel)) + " at z=" +
                            fmt(double(z)) + " (instance " + std::to_string(t) + ")");
        }
    }
    out.detail = "50 instances x 4 z-points, max rel err " + fmt(double(worst));
    return out;
}

// ---- 4: polynomial inequality grids ---------------------------------------

Outcome c4_inequality_grids() {
    Outcome out;
    long long points = 0, violations = 0;

    // cycle shortening on the real-spectrum set
    for (int l = 2; l <= 10; ++l)
        for (long double x = -5.0L; x <= 5.0L; x += 0.25L)
            for (long double y = 1.0L; y <= 10.0L; y += 0.25L) {
                long double disc = y * y * x * x + (4 - 2 * y) * x + 1;
                if (disc < 0) continue;
                ++points;
                long double lhs = b_poly_cyclic(l, x, y);
                long double rhs = std::pow(b_poly_cyclic(2, x, y), l / 2.0L);
                if (lhs > rhs + 1e-12L * std::fabs(rhs) + 1e-15L) ++violations;
            }

    // path-to-cycle for nonnegative x
    for (int l = 1; l <= 10; ++l)
        for (long double x = 0.0L; x <= 5.0L; x += 0.25L)
            for (long double y = 1.0L; y <= 10.0L; y += 0.25L) {
                ++points;
                long double lhs = b_poly(l, x, y);
                long double rhs = std::pow(b_poly_cyclic(2, x, y), l / 2.0L);
                if (lhs * lhs > rhs * rhs * (1 + 1e-12L) + 1e-15L) ++violations;
            }

    // outcome-polynomial inequalities under nonnegative correlation
    SeededRng rng(1004, 0);
    const long double zs[] = {1.0L, 1.1L, 1.5L, 2.0L, 3.0L, 5.0L};
    for (int t = 0; t < 200; ++t) {
        CorrelationParams p = random_correlated(rng);
        for (long double z : zs) {
            long double a2 = a_poly_cyclic(2, p, z);
            for (int l = 1; l <= 8; ++l) {
                ++points;
                long double rhs = std::pow(a2, (long double)l);
                long double path = a_poly(l, p, z);
                if (path * path > rhs * (1 + 1e-10L)) ++violations;
                if (l >= 2) {
                    long double cyc = a_poly_cyclic(l, p, z);
                    if (cyc * cyc > rhs * (1 + 1e-10L)) ++violations;
                }
            }
        }
    }

    // substitution identity between the two polynomial families
    for (int t = 0; t < 100; ++t) {
        CorrelationParams p = random_correlated(rng);
        long double marg = (long double)p.p1_star() * p.pstar_1();
        long double z = 4.0L * rng.next_unit();
        long double x = marg * (z - 1.0L);
        long double y = (long double)p.p11 / marg;
        for (int l = 1; l <= 12; ++l) {
            ++points;
            long double da = a_poly(l, p, z) - b_poly(l, x, y);
            long double dc = a_poly_cyclic(l, p, z) - b_poly_cyclic(l, x, y);
            if (std::fabs(da) > 1e-12L * std::max(std::fabs(a_poly(l, p, z)), 1.0L))
                ++violations;
            if (std::fabs(dc) >
                1e-12L * std::max(std::fabs(a_poly_cyclic(l, p, z)), 1.0L))
                ++violations;
        }
    }

    REQUIRE_ACC(violations == 0,
                std::to_string(violations) + " violations over " +
                    std::to_string(points) + " grid points");
    out.detail = "0 violations over " + std::to_string(points) + " grid points";
    return out;
}

// ---- 5: closed-form domination of the exact generating function ----------

Outcome c5_gf_domination() {
    Outcome out;
    SeededRng rng(1005, 0);
    const long double zs[] = {1.1L, 2.0L, 5.0L};
    double worst_margin = 1e300;
    for (int t = 0; t < 100; ++t) {
        int n = 5 + static_cast<int>(rng.next_below(4));
        auto [mu, mu_star] = random_pair_instance(n, rng);
        DecompositionStats st = decompose(mu, mu_star);
        CorrelationParams p = random_correlated(rng);
        for (long double z : zs) {
            double log_exact = double(std::log(gf_exact(st, p, z)));
            double log_bound = double(gf_log_upper_bound(st, p, z));
            worst_margin = std::min(worst_margin, log_bound - log_exact);
            REQUIRE_ACC(log_bound >= log_exact - 1e-9,
                        "bound fell below exact at z=" + fmt(double(z)) +
                            " (instance " + std::to_string(t) + ")");
        }
    }
    out.detail = "100 instances x 3 z-points, min log margin " + fmt(worst_margin);
    return out;
}

// ---- 6: tail optimizer validity -------------------------------------------

Outcome c6_chernoff() {
    Outcome out;
    SeededRng rng(1006, 0);
    for (int t = 0; t < 1000; ++t) {
        double q1 = std::pow(10.0, -3.0 + 4.0 * rng.next_unit());
        double q2 = std::pow(10.0, -3.0 + 4.0 * rng.next_unit());
        double tau = std::pow(10.0, -1.0 + 3.0 * rng.next_unit());
        if (t % 10 == 0) q1 = 0.0;
        if (t % 10 == 1) q2 = 0.0;
        ChernoffSolution s = chernoff_optimize(q1, q2, tau);

        double resid = 2.0 * q2 * s.z_star * s.z_star + q1 * s.z_star - tau;
        REQUIRE_ACC(std::fabs(resid) <= 1e-9 * std::max(tau, 1.0),
                    "stationarity residual " + fmt(resid) + " at trial " +
                        std::to_string(t));

        auto objective = [&](double u) {
            return q1 * (u - 1.0) + q2 * (u * u - 1.0) - tau * std::log(u);
        };
        double grid_min = 1e300;
        for (int i = 1; i <= 60; ++i)
            grid_min = std::min(grid_min, objective(s.z_star * (0.2 + 0.1633 * i)));
        REQUIRE_ACC(grid_min <= s.log_bound + 1e-9 * (std::fabs(grid_min) + 1.0),
                    "certificate undercuts the grid minimum at trial " +
                        std::to_string(t));
    }
    out.detail = "1000 draws: stationarity <= 1e-9 tau, certificate valid";
    return out;
}

// ---- 7: tail bound vs Monte Carlo -----------------------------------------

struct TailConfig {
    int n, transpositions, lone, k;
    CorrelationParams p;
};

Outcome c7_tail_monte_carlo() {
    Outcome out;
    std::vector<TailConfig> configs = {
        {200, 1, 0, 6, CorrelationParams(0.98, 0.0, 0.0, 0.02)},
        {200, 1, 1, 8, CorrelationParams(0.98, 0.0, 0.0, 0.02)},
        {150, 0, 2, 7, CorrelationParams(0.9702, 0.0049, 0.0049, 0.02)},
        {100, 2, 0, 8, CorrelationParams(0.97, 0.0, 0.0, 0.03)},
        {120, 0, 4, 10, CorrelationParams(0.955, 0.0115, 0.0115, 0.022)},
    };
    std::string margins;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        const TailConfig& cfg = configs[c];
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < cfg.transpositions; ++i) {
            pairs.emplace_back(2 * i, 2 * i + 1);
            pairs.emplace_back(2 * i + 1, 2 * i);
        }
        int base = 2 * cfg.transpositions;
        for (int j = 0; j < cfg.lone; ++j)
            pairs.emplace_back(base + 2 * j, base + 2 * j + 1);
        for (int i = base + 2 * cfg.lone; i < cfg.n; ++i) pairs.emplace_back(i, i);
        Matching mu(pairs);
        Matching mu_star = identity_matching(cfg.n);
        int d = 2 * cfg.transpositions + cfg.lone;

        BoundReport r = tail_bound(cfg.n, d, cfg.k, cfg.p, cfg.transpositions);
        double bound = std::exp(r.log_tail_bound);

        MCoordinateSystem sys = build_m_coordinates(mu, mu_star);
        REQUIRE_ACC(sys.kd_threshold_scale == d, "coordinate system d mismatch");
        SeededRng rng(1007, c);
        const int trials = 100000;
        long long threshold = static_cast<long long>(cfg.k) * d;
        int hits = 0;
        for (int t = 0; t < trials; ++t)
            if (sys.sample_m(cfg.p, rng) >= threshold) ++hits;
        double emp = double(hits) / trials;
        double se = std::sqrt(emp * (1.0 - emp) / trials);
        REQUIRE_ACC(emp <= bound + 3.0 * se,
                    "empirical " + fmt(emp) + " above bound " + fmt(bound) +
                        " (config " + std::to_string(c) + ")");
        margins += (c ? ", " : "") + fmt(emp) + "<=" + fmt(bound);
    }
    out.detail = "5 configs, 1e5 samples each: " + margins;
    return out;
}

// ---- 8: k-core size at the recommended threshold --------------------------

Outcome c8_core_size() {
    Outcome out;
    int n = 10000;
    CorrelationParams p(0.996, 0.0, 0.0, 0.004);
    int k = recommended_k(n, p.p11);
    REQUIRE_ACC(k == 24, "recommended threshold must be 24 at n*p11 = 40");
    double floor = n * (1.0 - std::exp(-std::pow(40.0, 0.25)));
    int ok = 0, trials = 20;
    double worst = 1e18;
    for (int t = 0; t < trials; ++t) {
        SeededRng rng(1008, t);
        Matching mu_star = sample_uniform_bijection(n, rng);
        CorrelatedPair g = sample_pair(mu_star, n, p, rng);
        Matching est = oracle_kcore_estimate(g.ga, g.gb, mu_star, k);
        if (est.size() >= floor) ++ok;
        worst = std::min(worst, double(est.size()));
    }
    REQUIRE_ACC(ok >= 19, "only " + std::to_string(ok) +
                              "/20 trials reached the size floor " + fmt(floor));
    out.detail = std::to_string(ok) + "/20 trials >= " + fmt(floor) +
                 ", smallest core " + fmt(worst);
    return out;
}

// ---- 9: exhaustive-scale union-bound phenomenology ------------------------

Outcome c9_exhaustive_phenomenology() {
    Outcome out;
    int n = 7, k = 3, trials = 200;
    CorrelationParams p(0.5, 0.0, 0.0, 0.5);
    BoundReport rep = xi_and_union_bound(n, k, p);
    int with_bad = 0;
    for (int t = 0; t < trials; ++t) {
        SeededRng rng(1009, t);
        Matching mu_star = sample_uniform_bijection(n, rng);
        CorrelatedPair g = sample_pair(mu_star, n, p, rng);
        auto aligns = enumerate_k_core_alignments(g.ga, g.gb, k);
        Matching oracle = oracle_kcore_estimate(g.ga, g.gb, mu_star, k);
        REQUIRE_ACC(std::binary_search(aligns.begin(), aligns.end(), oracle),
                    "oracle restriction missing from enumeration at trial " +
                        std::to_string(t));
        for (const Matching& m : aligns)
            if (!matching_difference(m, mu_star).empty()) {
                ++with_bad;
                break;
            }
    }
    double frac = double(with_bad) / trials;
    REQUIRE_ACC(frac < rep.union_bound,
                "wrong-pair fraction " + fmt(frac) + " not below union bound " +
                    fmt(rep.union_bound));
    out.detail = "wrong-pair fraction " + fmt(frac) + " < bound " +
                 fmt(rep.union_bound) + ", oracle always enumerated";
    return out;
}

// ---- 10: converse suite ----------------------------------------------------

Outcome c10_converse() {
    Outcome out;
    SeededRng rng(1010, 0);

    // list-success rank inequality
    for (int t = 0; t < 1000; ++t) {
        int m = 1 + static_cast<int>(rng.next_below(12));
        std::vector<double> raw(m);
        double total = 0;
        for (int i = 0; i < m; ++i) {
            raw[i] = -std::log(std::max(rng.next_unit(), 1e-12));
            if (i > 0 && rng.next_unit() < 0.3) raw[i] = raw[0];
            total += raw[i];
        }
        for (double& x : raw) x /= total;
        int l = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m) + 1));
        ListSuccessBound b = max_list_success(raw, l);
        REQUIRE_ACC(b.best_list_prob <= b.rank_bound + 1e-12,
                    "list mass beats the rank bound at trial " + std::to_string(t));
    }

    // posterior never drops under intersection-automorphism relabeling
    CorrelationParams pc(0.5, 0.1, 0.08, 0.32);
    for (int t = 0; t < 100; ++t) {
        Matching mu_star = sample_uniform_bijection(5, rng);
        CorrelatedPair g = sample_pair(mu_star, 5, pc, rng);
        IntersectionSymmetryCheck c = verify_intersection_symmetry(g.ga, g.gb, mu_star, pc);
        REQUIRE_ACC(c.holds, "posterior dropped under relabeling at trial " +
                                 std::to_string(t));
    }

    // isolated-vertex mean at the desk point
    IsolatedStats iso = isolated_stats(100, 0.01, 20000, rng);
    REQUIRE_ACC(std::fabs(iso.z_score) <= 3.0,
                "isolated mean " + fmt(iso.empirical_mean) + " is " +
                    fmt(iso.z_score) + " standard errors from " +
                    fmt(iso.expected_mean));

    // partial recovery is hopeless at p11 = 1/n
    CorrelationParams sparse(0.9998, 5e-5, 5e-5, 1e-4);
    PartialRecoveryReport rep =
        partial_recovery_converse_check(10000, sparse, 0, 100, rng);
    REQUIRE_ACC(rep.mean_success_bound <= 1e-3,
                "success bound " + fmt(rep.mean_success_bound) + " above 1e-3");

    out.detail = "rank bound 1000/1000, symmetry 100/100, isolated z " +
                 fmt(iso.z_score) + ", recovery bound " +
                 fmt(rep.mean_success_bound);
    return out;
}

// ---- 11: CLI determinism ---------------------------------------------------

int run_cli(const std::string& args) {
    std::string cmd = std::string("\"") + ACCEPT_CLI_PATH + "\" " + args +
                      " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

Outcome c11_cli_determinism() {
    Outcome out;
    const char* sweep_cfg = "/tmp/kca_accept_sweep.json";
    const char* oracle_cfg = "/tmp/kca_accept_oracle.json";
    write_text_file(sweep_cfg, R"({
        "kind": "sweep", "n": 300,
        "p": {"np11": [4, 8], "noise_ratio": 0.1},
        "k": "recommended", "trials": 4, "seed": 12345
    })");
    write_text_file(oracle_cfg, R"({
        "kind": "oracle_kcore", "n": [40, 60],
        "p": {"p00": 0.58, "p01": 0.06, "p10": 0.06, "p11": 0.3},
        "k": 3, "trials": 5, "seed": 77
    })");
    for (const char* cfg : {sweep_cfg, oracle_cfg}) {
        std::string base = std::string("--config ") + cfg;
        REQUIRE_ACC(run_cli(base + " --out /tmp/kca_accept_1.csv --jobs 1 sweep") == 0,
                    "CLI run failed (jobs 1)");
        REQUIRE_ACC(run_cli(base + " --out /tmp/kca_accept_8.csv --jobs 8 sweep") == 0,
                    "CLI run failed (jobs 8)");
        REQUIRE_ACC(run_cli(base + " --out /tmp/kca_accept_r.csv --jobs 8 sweep") == 0,
                    "CLI rerun failed");
        std::string a = read_text_file("/tmp/kca_accept_1.csv");
        std::string b = read_text_file("/tmp/kca_accept_8.csv");
        std::string c = read_text_file("/tmp/kca_accept_r.csv");
        REQUIRE_ACC(!a.empty() && a.front() == 't', "CSV output looks wrong");
        REQUIRE_ACC(a == b, std::string("jobs 1 vs 8 differ for ") + cfg);
        REQUIRE_ACC(b == c, std::string("rerun differs for ") + cfg);
    }
    out.detail = "2 configs x 3 runs byte-identical";
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> fn;
    };
    std::vector<Criterion> criteria = {
        {"worked-instance reproduction", c1_worked_instance},
        {"k-core peeling vs subset oracle", c2_kcore_oracle},
        {"generating-function exactness", c3_gf_exact},
        {"polynomial inequality grids", c4_inequality_grids},
        {"closed-form generating-function domination", c5_gf_domination},
        {"tail optimizer validity", c6_chernoff},
        {"tail bound vs monte carlo", c7_tail_monte_carlo},
        {"recommended-threshold core size", c8_core_size},
        {"exhaustive-scale union-bound phenomenology", c9_exhaustive_phenomenology},
        {"converse suite", c10_converse},
        {"experiment determinism across jobs", c11_cli_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::printf("[%s] %2zu %s%s%s (%lld ms)\n", o.pass ? "PASS" : "FAIL",
                    i + 1, criteria[i].name, o.detail.empty() ? "" : ": ",
                    o.detail.c_str(), static_cast<long long>(ms));
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    if (failures) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
