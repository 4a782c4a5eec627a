#pragma once

#include <span>
#include <string>
#include <vector>

#include "wcm/numtheory.hpp"
#include "wcm/rational.hpp"

namespace wcm {

// Integral quadratic form f(x) = x^T F x with symmetric F and target t.
// Cross coefficients of f are therefore even (2*F_ij); odd cross terms are
// not representable by an integer symmetric matrix.
struct QuadraticForm {
    int s = 0;
    std::vector<i64> F; // row-major s*s, symmetric
    i64 t = 0;

    i64 at(int i, int j) const { return F[static_cast<size_t>(i) * s + j]; }
    i64& at(int i, int j) { return F[static_cast<size_t>(i) * s + j]; }

    BigInt evaluate(std::span<const i64> x) const;
    double evaluate_real(std::span<const double> x) const;
    std::vector<double> gradient(std::span<const double> x) const; // 2Fx

    BigInt determinant() const;
    i64 max_abs_entry() const;

    // Throws input_error on asymmetry/size mismatch, and on det F = 0.
    static QuadraticForm make(int s, std::vector<i64> F, i64 t);
    // {"s": int, "F": [[int]], "t": int}
    static QuadraticForm from_json_text(const std::string& text);
};

// Split of the variables into a set Y of size floor(s/2) and its complement.
// The coupling block F2 (complement rows x Y columns) carries the mixed
// terms; r is its rank over the rationals.
struct BlockDecomposition {
    std::vector<int> partition_y;        // ascending indices, size n
    std::vector<std::vector<i64>> F1;    // n x n
    std::vector<std::vector<i64>> F2;    // (s-n) x n
    std::vector<std::vector<i64>> F3;    // n x (s-n)
    std::vector<std::vector<i64>> F4;    // (s-n) x (s-n)
    int r = 0;                           // rank(F2)
};

struct L1Result {
    BlockDecomposition best;
    bool satisfied = false; // r >= 5
};

// f(y, z) = r(y) + sum_j y_j g_j(z) + q(z), plus the transposed family
// h_k(y) so that f = r(y) + sum_k z_k h_k(y) + q(z) as well.
struct YZDecomposition {
    std::vector<int> partition_y;
    std::vector<std::vector<i64>> r_coeffs; // n x n symmetric, r(y) = y^T R y
    std::vector<std::vector<i64>> g;        // n rows, g_j(z) = sum_k g[j][k] z_k
    std::vector<std::vector<i64>> h;        // s-n rows, h_k(y) = sum_j h[k][j] y_j
    std::vector<std::vector<i64>> q_coeffs; // (s-n) x (s-n) symmetric
};

// Exact rank of an integer matrix by fraction-free elimination.
int rank_bareiss(std::vector<std::vector<BigInt>> m);

BlockDecomposition block_rank(const QuadraticForm& form,
                              const std::vector<int>& partition_y);

// Exhausts all C(s, floor(s/2)) partitions; ties broken by the
// lexicographically smallest maximizing subset. Refuses s > 24.
L1Result check_L1(const QuadraticForm& form);

YZDecomposition yz_decompose(const QuadraticForm& form,
                             const std::vector<int>& partition_y);

} // namespace wcm
