#include "wcm/gauss.hpp"

#include <cmath>

#include "wcm/errors.hpp"

namespace wcm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int valuation_capped(i64 x, i64 p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (v < cap && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

} // namespace

std::complex<double> gauss_sum_pk(i64 c, i64 p, int k) {
    i64 q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    c = mod_floor(c, q);
    if (c == 0) return {static_cast<double>(q), 0.0};
    int j = valuation_capped(c, p, k);
    i64 u = c;
    i64 scale = 1;
    for (int i = 0; i < j; ++i) {
        u /= p;
        scale *= p;
    }
    int m = k - j; // sum reduces to scale * G(u, p^m), gcd(u, p) = 1
    double g;
    if (m % 2 == 0) {
        g = std::pow(static_cast<double>(p), m / 2);
        return {scale * g, 0.0};
    }
    g = std::pow(static_cast<double>(p), (m - 1) / 2) * std::sqrt(static_cast<double>(p));
    int chi = jacobi(u % p, p);
    // G(1, p) = sqrt(p) for p = 1 mod 4, i sqrt(p) for p = 3 mod 4
    if (p % 4 == 1) return {scale * g * chi, 0.0};
    return {0.0, scale * g * chi};
}

std::vector<i64> diagonalize_mod_pk(std::vector<std::vector<i64>> M, i64 p, int k) {
    if (p == 2) throw input_error("diagonalize_mod_pk requires an odd prime");
    int s = static_cast<int>(M.size());
    i64 q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    for (auto& row : M)
        for (auto& v : row) v = mod_floor(v, q);

    auto val = [&](i64 x) { return valuation_capped(x, p, k); };

    std::vector<i64> diag(s, 0);
    for (int step = 0; step < s; ++step) {
        // locate the entry of minimal p-valuation in the trailing block
        int bi = -1, bj = -1, bv = k;
        for (int i = step; i < s; ++i)
            for (int j = step; j < s; ++j) {
                int v = val(M[i][j]);
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break; // trailing block vanishes mod p^k
        if (bi != bj) {
            // fold column bj into bi so a diagonal entry attains the minimal
            // valuation; one of the signs works because p is odd
            i64 cand_plus = mod_floor(M[bi][bi] + 2 * M[bi][bj] + M[bj][bj], q);
            int sign = val(cand_plus) == bv ? 1 : -1;
            for (int r = 0; r < s; ++r)
                M[r][bi] = mod_floor(M[r][bi] + sign * M[r][bj], q);
            for (int ccol = 0; ccol < s; ++ccol)
                M[bi][ccol] = mod_floor(M[bi][ccol] + sign * M[bj][ccol], q);
        }
        if (bi != step) {
            std::swap(M[bi], M[step]);
            for (int r = 0; r < s; ++r) std::swap(M[r][bi], M[r][step]);
        }
        i64 pivot = M[step][step];
        int pv = val(pivot);
        i64 punit = pivot;
        for (int i = 0; i < pv; ++i) punit /= p;
        i64 punit_inv = inv_mod(punit, q);
        for (int r = step + 1; r < s; ++r) {
            i64 mr = M[r][step];
            if (mr == 0) continue;
            // mr has valuation >= pv by pivot minimality
            i64 mred = mr;
            for (int i = 0; i < pv; ++i) mred /= p;
            i64 mult = mul_mod(mred, punit_inv, q); // mr / pivot mod q
            for (int ccol = step; ccol < s; ++ccol)
                M[r][ccol] = mod_floor(M[r][ccol] - mul_mod(mult, M[step][ccol], q), q);
            for (int rr = step; rr < s; ++rr)
                M[rr][r] = mod_floor(M[rr][r] - mul_mod(mult, M[rr][step], q), q);
        }
        diag[step] = M[step][step];
    }
    return diag;
}

std::complex<double> complete_quadratic_sum_pk(const std::vector<std::vector<i64>>& M,
                                               i64 a, i64 p, int k) {
    i64 q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    std::vector<i64> d = diagonalize_mod_pk(M, p, k);
    std::complex<double> out{1.0, 0.0};
    for (i64 di : d) out *= gauss_sum_pk(mul_mod(mod_floor(a, q), mod_floor(di, q), q), p, k);
    return out;
}

} // namespace wcm
