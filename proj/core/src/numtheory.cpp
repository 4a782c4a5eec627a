#include "wcm/numtheory.hpp"

#include <cmath>

#include "wcm/errors.hpp"

namespace wcm {

i64 gcd_ll(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

ExtGcd ext_gcd(i64 a, i64 b) {
    if (b == 0) {
        if (a < 0) return {-a, -1, 0};
        return {a, 1, 0};
    }
    ExtGcd r = ext_gcd(b, a % b);
    return {r.g, r.y, r.x - (a / b) * r.y};
}

i64 inv_mod(i64 a, i64 m) {
    a = mod_floor(a, m);
    ExtGcd e = ext_gcd(a, m);
    if (e.g != 1) throw input_error("inv_mod: arguments not coprime");
    return mod_floor(e.x, m);
}

i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<__int128>(a) * b % m);
}

i64 pow_mod(i64 base, i64 exp, i64 m) {
    base = mod_floor(base, m);
    i64 r = 1 % m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 0) n = -n;
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [p, e] : factorize(n)) {
        (void)e;
        r -= r / p;
    }
    return r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

int jacobi(i64 a, i64 n) {
    a = mod_floor(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

i64 isqrt_ll(i64 n) {
    if (n < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

BigInt isqrt_big(const BigInt& n) {
    return boost::multiprecision::sqrt(n);
}

std::vector<uint8_t> prime_sieve(i64 limit) {
    std::vector<uint8_t> v(limit + 1, 1);
    if (limit >= 0) v[0] = 0;
    if (limit >= 1) v[1] = 0;
    for (i64 p = 2; p * p <= limit; ++p)
        if (v[p])
            for (i64 m = p * p; m <= limit; m += p) v[m] = 0;
    return v;
}

std::vector<uint8_t> kfree_sieve(i64 limit, int k) {
    std::vector<uint8_t> v(limit + 1, 1);
    if (limit >= 0) v[0] = 0;
    for (i64 p = 2;; ++p) {
        i64 pk = 1;
        bool over = false;
        for (int i = 0; i < k; ++i) {
            if (pk > limit / p) {
                over = true;
                break;
            }
            pk *= p;
        }
        if (over) break;
        for (i64 m = pk; m <= limit; m += pk) v[m] = 0;
    }
    return v;
}

} // namespace wcm
