#pragma once

#include <complex>
#include <vector>

#include "wcm/forms.hpp"
#include "wcm/numtheory.hpp"

namespace wcm {

// Quadratic Gauss sum  sum_{x mod p^k} e(c x^2 / p^k)  for an odd prime p.
std::complex<double> gauss_sum_pk(i64 c, i64 p, int k);

// Congruence-diagonalizes a symmetric matrix mod p^k (p odd): returns d such
// that x^T M x is equivalent to sum d_i y_i^2 under a unimodular change of
// variables mod p^k.
std::vector<i64> diagonalize_mod_pk(std::vector<std::vector<i64>> M, i64 p, int k);

// Complete sum  sum_{h mod p^k} e(a * h^T M h / p^k), p odd.
std::complex<double> complete_quadratic_sum_pk(const std::vector<std::vector<i64>>& M,
                                               i64 a, i64 p, int k);

} // namespace wcm
