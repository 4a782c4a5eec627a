#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wcm/rational.hpp"

namespace wcm {

using i64 = long long;
using u64 = unsigned long long;

i64 gcd_ll(i64 a, i64 b);

// ax + by = g; returns {g, x, y} with g >= 0.
struct ExtGcd {
    i64 g, x, y;
};
ExtGcd ext_gcd(i64 a, i64 b);

// Inverse of a mod m; throws input_error when gcd(a, m) != 1.
i64 inv_mod(i64 a, i64 m);

i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 base, i64 exp, i64 m);
i64 mod_floor(i64 a, i64 m); // representative in [0, m)

// (prime, exponent) pairs, ascending.
std::vector<std::pair<i64, int>> factorize(i64 n);

i64 euler_phi(i64 n);
bool is_prime(i64 n);

// Jacobi symbol (a | n) for odd positive n.
int jacobi(i64 a, i64 n);

// floor(sqrt(n)) for n >= 0, exact.
i64 isqrt_ll(i64 n);
BigInt isqrt_big(const BigInt& n);

// Eratosthenes bitmap [0, limit]; v[x] = 1 iff x prime.
std::vector<uint8_t> prime_sieve(i64 limit);

// v[x] = 1 iff x has no p^k divisor (k-free), x in [0, limit]; v[0] = 0.
std::vector<uint8_t> kfree_sieve(i64 limit, int k);

} // namespace wcm
