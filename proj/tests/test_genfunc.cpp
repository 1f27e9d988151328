#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "kca/decomposition.hpp"
#include "kca/error.hpp"
#include "kca/genfunc.hpp"

#include "oracle_helpers.hpp"

using namespace kca;
using namespace kca::testing;

namespace {

Matching identity_matching(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) pairs.emplace_back(i, i);
    return Matching(std::move(pairs));
}

// Joint cell law from marginals (qa, qb) and interpolation rho in [0,1]
// between independence and maximal overlap; rho >= 0 gives p11*p00 >= p10*p01.
CorrelationParams correlated_cells(double qa, double qb, double rho) {
    double p11 = qa * qb + rho * (std::min(qa, qb) - qa * qb);
    double p10 = qa - p11;
    double p01 = qb - p11;
    return CorrelationParams(1.0 - p10 - p01 - p11, p01, p10, p11);
}

CorrelationParams random_correlated(SeededRng& rng) {
    double qa = 0.1 + 0.6 * rng.next_unit();
    double qb = 0.1 + 0.6 * rng.next_unit();
    double rho = 0.1 + 0.8 * rng.next_unit();
    return correlated_cells(qa, qb, rho);
}

// Random (mu, mu_star) over [n] with at least one wrong pair.
std::pair<Matching, Matching> random_instance(int n, SeededRng& rng) {
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

}  // namespace

TEST_CASE("path and cycle polynomials match their closed forms") {
    SeededRng rng(71, 0);
    for (int trial = 0; trial < 40; ++trial) {
        long double x = -3.0L + 6.0L * rng.next_unit();
        long double y = 0.2L + 4.0L * rng.next_unit();
        CHECK(b_poly(1, x, y) == doctest::Approx(double(1 + x)));
        CHECK(b_poly(2, x, y) ==
              doctest::Approx(double(1 + 2 * x + x * x * y)));
        CHECK(b_poly_cyclic(1, x, y) == doctest::Approx(double(1 + x * y)));
        CHECK(b_poly_cyclic(2, x, y) ==
              doctest::Approx(double(1 + 2 * x + x * x * y * y)));
    }
    CHECK_THROWS_AS(b_poly(0, 1.0L, 1.0L), ConfigError);
}

TEST_CASE("transfer matrix equals brute enumeration up to length 16") {
    SeededRng rng(72, 0);
    for (int l = 1; l <= 16; ++l) {
        for (int trial = 0; trial < 8; ++trial) {
            long double x = -3.0L + 6.0L * rng.next_unit();
            long double y = 0.2L + 4.0L * rng.next_unit();
            long double lin = b_poly(l, x, y);
            long double cyc = b_poly_cyclic(l, x, y);
            CAPTURE(l);
            CHECK(double(lin) ==
                  doctest::Approx(double(b_poly_enum(l, x, y, false)))
                      .epsilon(1e-12));
            CHECK(double(cyc) ==
                  doctest::Approx(double(b_poly_enum(l, x, y, true)))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("outcome polynomials: normalization and closed forms") {
    SeededRng rng(73, 0);
    for (int trial = 0; trial < 30; ++trial) {
        CorrelationParams p = random_correlated(rng);
        for (int l = 1; l <= 10; ++l) {
            CHECK(double(a_poly(l, p, 1.0L)) == doctest::Approx(1.0));
            CHECK(double(a_poly_cyclic(l, p, 1.0L)) == doctest::Approx(1.0));
        }
        long double z = 4.0L * rng.next_unit();
        long double w = z - 1.0L;
        long double marg = (long double)p.p1_star() * p.pstar_1();
        CHECK(double(a_poly_cyclic(1, p, z)) ==
              doctest::Approx(double(1 + p.p11 * w)).epsilon(1e-12));
        CHECK(double(a_poly_cyclic(2, p, z)) ==
              doctest::Approx(double(1 + 2 * marg * w + p.p11 * p.p11 * w * w))
                  .epsilon(1e-12));
        CHECK(double(a_poly(1, p, z)) ==
              doctest::Approx(double(1 + marg * w)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(a_poly(1, correlated_cells(0.3, 0.3, 0.5), -0.5L),
                    ConfigError);
}

TEST_CASE("outcome polynomials reduce to path polynomials by substitution") {
    // x = p1*p*1(z-1), y = p11/(p1*p*1) maps the cell transfer matrix onto
    // the path one: traces and determinants coincide.
    SeededRng rng(74, 0);
    for (int trial = 0; trial < 30; ++trial) {
        CorrelationParams p = random_correlated(rng);
        long double marg = (long double)p.p1_star() * p.pstar_1();
        REQUIRE(marg > 0);
        long double z = 4.0L * rng.next_unit();
        long double x = marg * (z - 1.0L);
        long double y = (long double)p.p11 / marg;
        for (int l = 1; l <= 12; ++l) {
            CAPTURE(trial);
            CAPTURE(l);
            CHECK(double(a_poly(l, p, z)) ==
                  doctest::Approx(double(b_poly(l, x, y))).epsilon(1e-12));
            CHECK(double(a_poly_cyclic(l, p, z)) ==
                  doctest::Approx(double(b_poly_cyclic(l, x, y))).epsilon(1e-12));
        }
    }
}

TEST_CASE("cycle shortening: b_cyc_l <= b_cyc_2^(l/2) on the real-spectrum set") {
    long long checked = 0, violations = 0;
    long double worst = 0;
    for (int l = 2; l <= 10; ++l) {
        for (long double x = -5.0L; x <= 5.0L; x += 0.25L) {
            for (long double y = 1.0L; y <= 10.0L; y += 0.25L) {
                // transfer-matrix discriminant; complex spectrum is excluded
                long double disc = y * y * x * x + (4 - 2 * y) * x + 1;
                if (disc < 0) continue;
                ++checked;
                long double lhs = b_poly_cyclic(l, x, y);
                long double rhs = std::pow(b_poly_cyclic(2, x, y), l / 2.0L);
                if (lhs > rhs + 1e-12L * std::fabs(rhs) + 1e-15L) {
                    ++violations;
                    worst = std::max(worst, lhs - rhs);
                }
            }
        }
    }
    CAPTURE(double(worst));
    CHECK(checked > 10000);
    CHECK(violations == 0);
}

TEST_CASE("path to cycle: b_l^2 <= b_cyc_2^l for nonnegative x") {
    long long violations = 0;
    for (int l = 1; l <= 10; ++l)
        for (long double x = 0.0L; x <= 5.0L; x += 0.25L)
            for (long double y = 1.0L; y <= 10.0L; y += 0.25L) {
                long double lhs = b_poly(l, x, y);
                long double rhs = std::pow(b_poly_cyclic(2, x, y), l / 2.0L);
                if (lhs * lhs > rhs * rhs * (1 + 1e-12L) + 1e-15L) ++violations;
            }
    CHECK(violations == 0);
}

TEST_CASE("outcome polynomial inequalities under nonnegative correlation") {
    SeededRng rng(75, 0);
    const long double zs[] = {1.0L, 1.1L, 1.5L, 2.0L, 3.0L, 5.0L};
    long long violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        CorrelationParams p = random_correlated(rng);
        for (long double z : zs) {
            long double a2 = a_poly_cyclic(2, p, z);
            for (int l = 1; l <= 8; ++l) {
                long double path = a_poly(l, p, z);
                long double rhs = std::pow(a2, (long double)l);
                if (path * path > rhs * (1 + 1e-10L)) ++violations;
                if (l >= 2) {
                    long double cyc = a_poly_cyclic(l, p, z);
                    if (cyc * cyc > rhs * (1 + 1e-10L)) ++violations;
                }
            }
            // the 2-cycle dominates the 1-cycle squared, not vice versa
            long double a1 = a_poly_cyclic(1, p, z);
            if (a1 * a1 < a2 * (1 - 1e-10L)) ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("exact generating function against the coordinate-system oracle") {
    const long double zs[] = {0.5L, 1.0L, 2.0L, 3.0L};

    SeededRng rng(76, 0);
    std::vector<std::pair<Matching, Matching>> instances;
    instances.emplace_back(Matching({{0, 1}, {2, 3}, {3, 2}, {4, 4}}),
                           identity_matching(5));
    instances.emplace_back(Matching({{0, 2}, {1, 0}, {2, 1}, {3, 4}}),
                           identity_matching(5));
    for (int t = 0; t < 10; ++t) instances.push_back(random_instance(5, rng));

    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& [m, star] = instances[i];
        DecompositionStats d = decompose(m, star);
        MCoordinateSystem sys = build_m_coordinates(m, star);
        CorrelationParams p = random_correlated(rng);
        std::vector<long double> tally = sys.exact_tally(p);
        long double mass = 0;
        for (long double t : tally) mass += t;
        CHECK(double(mass) == doctest::Approx(1.0).epsilon(1e-12));
        for (long double z : zs) {
            long double lib = gf_exact(d, p, z);
            long double ref = gf_from_tally(tally, z);
            CAPTURE(i);
            CAPTURE(double(z));
            CHECK(double(lib) == doctest::Approx(double(ref)).epsilon(1e-10));
        }
    }
}

TEST_CASE("exact generating function of the traced instance is the factor product") {
    Matching mu_star = identity_matching(5);
    Matching mu({{0, 1}, {2, 3}, {3, 2}, {4, 4}});
    DecompositionStats st = decompose(mu, mu_star);
    SeededRng rng(77, 0);
    for (int trial = 0; trial < 10; ++trial) {
        CorrelationParams p = random_correlated(rng);
        long double z = 0.5L + 3.0L * rng.next_unit();
        // census: one region-1 path l=1, one region-1 4-cycle, two region-2
        // paths l=1, one region-2 2-cycle
        long double expect = a_poly(1, p, z) * a_poly_cyclic(2, p, z) *
                             a_poly(1, p, z * z) * a_poly(1, p, z * z) *
                             a_poly_cyclic(1, p, z * z);
        CHECK(double(gf_exact(st, p, z)) ==
              doctest::Approx(double(expect)).epsilon(1e-12));
    }
}

TEST_CASE("degenerate generating functions") {
    Matching mu_star = identity_matching(4);
    // mu agrees with mu_star: no wrong pairs, gf is 1 for every z
    DecompositionStats agree = decompose(Matching({{0, 0}, {1, 1}}), mu_star);
    CHECK(agree.d == 0);
    SeededRng rng(78, 0);
    CorrelationParams p = random_correlated(rng);
    for (long double z : {0.0L, 0.5L, 1.0L, 7.0L})
        CHECK(double(gf_exact(agree, p, z)) == doctest::Approx(1.0));

    // z = 1 normalizes regardless of the census
    auto [m, star] = random_instance(6, rng);
    CHECK(double(gf_exact(decompose(m, star), p, 1.0L)) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed-form bound dominates the exact generating function") {
    SeededRng rng(79, 0);
    const long double zs[] = {1.1L, 2.0L, 5.0L};
    for (int trial = 0; trial < 40; ++trial) {
        int n = 5 + static_cast<int>(rng.next_below(4));
        auto [m, star] = random_instance(n, rng);
        DecompositionStats st = decompose(m, star);
        CorrelationParams p = random_correlated(rng);
        for (long double z : zs) {
            long double log_exact = std::log(gf_exact(st, p, z));
            long double log_bound = gf_log_upper_bound(st, p, z);
            CAPTURE(trial);
            CAPTURE(double(z));
            CHECK(double(log_bound) >= double(log_exact) - 1e-9);
        }
        // exp consistency where it cannot overflow
        long double lb = gf_log_upper_bound(st, p, 1.1L);
        if (lb < 100.0L)
            CHECK(double(gf_upper_bound(st, p, 1.1L)) ==
                  doctest::Approx(double(std::exp(lb))).epsilon(1e-12));
    }

    DecompositionStats st =
        decompose(Matching({{0, 1}, {1, 0}}), identity_matching(3));
    CHECK_THROWS_AS(gf_log_upper_bound(st, random_correlated(rng), 0.9L),
                    ConfigError);
    CHECK_THROWS_AS(
        gf_log_upper_bound(st, CorrelationParams(0.1, 0.4, 0.4, 0.1), 2.0L),
        ConfigError);
}
