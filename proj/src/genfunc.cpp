#include "kca/genfunc.hpp"

#include <cmath>

#include "kca/error.hpp"

namespace kca {

namespace {

struct Mat2 {
    long double m[2][2];

    Mat2 operator*(const Mat2& o) const {
        Mat2 r{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }
};

Mat2 mat_pow(Mat2 base, int e) {
    Mat2 r{{{1, 0}, {0, 1}}};
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Mat2 b_transfer(long double x, long double y) {
    return Mat2{{{1, 1}, {x, x * y}}};
}

Mat2 pz_matrix(const CorrelationParams& p, long double z) {
    Mat2 P{{{static_cast<long double>(p.p00), static_cast<long double>(p.p01)},
            {static_cast<long double>(p.p10), static_cast<long double>(p.p11)}}};
    Mat2 Z{{{1, 1}, {1, z}}};
    return P * Z;
}

}  // namespace

long double b_poly(int l, long double x, long double y) {
    require_config(l >= 1, "b_poly: l must be >= 1");
    // Row vector (1, 1) through l-1 transfer steps, then weight the final
    // symbol: column (1, x).
    Mat2 t = mat_pow(b_transfer(x, y), l - 1);
    long double r0 = t.m[0][0] + t.m[0][1] * x;
    long double r1 = t.m[1][0] + t.m[1][1] * x;
    return r0 + r1;
}

long double b_poly_cyclic(int l, long double x, long double y) {
    require_config(l >= 1, "b_poly_cyclic: l must be >= 1");
    Mat2 t = mat_pow(b_transfer(x, y), l);
    return t.m[0][0] + t.m[1][1];
}

long double a_poly(int l, const CorrelationParams& p, long double z) {
    require_config(l >= 1, "a_poly: l must be >= 1");
    require_config(z >= 0.0L, "a_poly: z must be nonnegative");
    Mat2 t = pz_matrix(p, z);
    t = mat_pow(t, l);
    Mat2 P{{{static_cast<long double>(p.p00), static_cast<long double>(p.p01)},
            {static_cast<long double>(p.p10), static_cast<long double>(p.p11)}}};
    t = t * P;
    return t.m[0][0] + t.m[0][1] + t.m[1][0] + t.m[1][1];
}

long double a_poly_cyclic(int l, const CorrelationParams& p, long double z) {
    require_config(l >= 1, "a_poly_cyclic: l must be >= 1");
    require_config(z >= 0.0L, "a_poly_cyclic: z must be nonnegative");
    Mat2 t = mat_pow(pz_matrix(p, z), l);
    return t.m[0][0] + t.m[1][1];
}

long double gf_exact(const DecompositionStats& st, const CorrelationParams& p,
                     long double z) {
    require_config(z >= 0.0L, "gf_exact: z must be nonnegative");
    long double result = 1.0L;
    for (int region = 1; region <= 2; ++region) {
        long double zr = region == 1 ? z : z * z;
        for (auto [l, c] : st.paths[region])
            result *= std::pow(a_poly(l, p, zr), static_cast<long double>(c));
        for (auto [l, c] : st.cycles[region])
            result *= std::pow(a_poly_cyclic(l, p, zr), static_cast<long double>(c));
    }
    return result;
}

long double gf_log_upper_bound(const DecompositionStats& st,
                               const CorrelationParams& p, long double z) {
    require_config(z >= 1.0L, "gf_upper_bound: z must be >= 1");
    require_config(p.p11 * p.p00 >= p.p10 * p.p01,
                   "gf_upper_bound: needs nonnegative correlation");
    long double c21 = static_cast<long double>(st.cycle_count(2, 1));
    long double t_tilde =
        static_cast<long double>(st.d) * (st.n - 1) - 2.0L * c21;
    long double w = z * z - 1.0L;
    long double p11 = p.p11;
    long double marg = static_cast<long double>(p.p1_star()) * p.pstar_1();
    return c21 * p11 * w + (t_tilde / 4.0L) * (2.0L * marg * w + p11 * p11 * w * w);
}

long double gf_upper_bound(const DecompositionStats& st, const CorrelationParams& p,
                           long double z) {
    return std::exp(gf_log_upper_bound(st, p, z));
}

}  // namespace kca
