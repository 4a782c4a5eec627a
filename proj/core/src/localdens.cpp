#include "wcm/localdens.hpp"

#include <cmath>
#include <random>

#include "wcm/errors.hpp"
#include "wcm/kahan.hpp"

namespace wcm {

namespace {

struct EnumResult {
    double M = 0.0;
    bool any_solution = false;
    bool all_nonsingular = true; // gradient != 0 mod p at every weighted solution
};

// Enumerates (Z/p^m)^s over the kappa-support and accumulates the weighted
// mass of f = t; optionally checks gradients mod p at the solutions.
EnumResult enumerate_M(const QuadraticForm& form, const WeightModel& model, i64 p,
                       int m, bool check_gradients, double cap) {
    i64 q = 1;
    for (int i = 0; i < m; ++i) {
        if (q > (1LL << 62) / p) throw budget_error("enumeration_cap", 9e18, cap);
        q *= p;
    }
    const int s = form.s;
    std::vector<double> kap(q);
    std::vector<i64> res;
    for (i64 h = 0; h < q; ++h) {
        kap[h] = model.kappa(q, h).to_double();
        if (kap[h] != 0.0) res.push_back(h);
    }
    double tuples = std::pow(static_cast<double>(std::max<size_t>(res.size(), 1)), s);
    if (tuples > cap) throw budget_error("enumeration_cap", tuples, cap);

    i64 tm = mod_floor(form.t, q);
    std::vector<i64> fdd(s);
    for (int i = 0; i < s; ++i) fdd[i] = mod_floor(form.at(i, i), q);

    EnumResult out;
    KahanSum acc;
    std::vector<std::vector<i64>> lin_stack(s + 1, std::vector<i64>(s, 0));
    std::vector<i64> val_stack(s + 1, 0), hs(s, 0);
    std::vector<double> kw_stack(s + 1, 1.0);
    std::vector<size_t> idx(s, 0);
    int d = 0;
    while (d >= 0) {
        if (idx[d] == res.size()) {
            --d;
            if (d >= 0) ++idx[d];
            continue;
        }
        i64 h = res[idx[d]];
        i64 val = mod_floor(val_stack[d] + mul_mod(mul_mod(fdd[d], h, q), h, q) +
                                mul_mod(lin_stack[d][d], h, q),
                            q);
        double kw = kw_stack[d] * kap[h];
        hs[d] = h;
        if (d == s - 1) {
            if (val == tm) {
                acc.add(kw);
                out.any_solution = true;
                if (check_gradients && out.all_nonsingular) {
                    bool zero = true;
                    for (int i = 0; i < s && zero; ++i) {
                        i64 g = 0;
                        for (int j = 0; j < s; ++j)
                            g = mod_floor(g + 2 * mod_floor(form.at(i, j), p) * (hs[j] % p), p);
                        if (g != 0) zero = false;
                    }
                    if (zero) out.all_nonsingular = false;
                }
            }
            ++idx[d];
            continue;
        }
        val_stack[d + 1] = val;
        kw_stack[d + 1] = kw;
        for (int j = d + 1; j < s; ++j)
            lin_stack[d + 1][j] =
                mod_floor(lin_stack[d][j] + mul_mod(mod_floor(2 * form.at(d, j), q), h, q), q);
        ++d;
        idx[d] = 0;
    }
    out.M = acc.value();
    return out;
}

// Nonsingular lifting applies when the kappa mass per residue scales by 1/p
// between consecutive levels; true for unit and primes everywhere and for
// kfree once m >= k.
bool lift_compatible(const WeightModel& model, int m) {
    switch (model.kind()) {
        case WeightKind::Unit:
        case WeightKind::Primes:
            return true;
        case WeightKind::KFree:
            return m >= model.kfree_k();
        default:
            return false;
    }
}

} // namespace

double M_pm(const QuadraticForm& form, const WeightModel& model, i64 p, int m,
            const LocalDensityOpts& opts) {
    if (!is_prime(p)) throw input_error("M_pm: p must be prime");
    if (m < 1) throw input_error("M_pm: m must be >= 1");
    return enumerate_M(form, model, p, m, false, opts.enumeration_cap).M;
}

LocalDensitySequence chi_p(const QuadraticForm& form, const WeightModel& model,
                           i64 p, int mmax, const LocalDensityOpts& opts) {
    if (!is_prime(p)) throw input_error("chi_p: p must be prime");
    LocalDensitySequence seq;
    seq.p = p;

    double B_partial = 1.0; // B(1)
    int consecutive_small = 0;
    bool lift_from_prev = false;
    double lifted_pmM = 0.0;

    for (int m = 1; m <= mmax; ++m) {
        LocalDensityRow row;
        row.m = m;
        double pm = std::pow(static_cast<double>(p), m);

        bool have_M = false;
        try {
            EnumResult er = enumerate_M(form, model, p, m, true, opts.enumeration_cap);
            row.M = er.M;
            row.pmM = pm * er.M;
            row.method = "enum";
            have_M = true;
            lift_from_prev = er.all_nonsingular && lift_compatible(model, m);
            lifted_pmM = row.pmM;
        } catch (const budget_error&) {
            if (lift_from_prev) {
                row.pmM = lifted_pmM;
                row.M = row.pmM / pm;
                row.method = "lift";
                have_M = true;
            } else {
                row.budget_skipped = true;
                row.method = "budget";
            }
        }

        double b_m = 0.0;
        bool have_B = false;
        i64 pk = 1;
        bool overflow = false;
        for (int i = 0; i < m; ++i) {
            if (pk > (1LL << 62) / p) {
                overflow = true;
                break;
            }
            pk *= p;
        }
        if (!overflow) {
            try {
                auto B = B_q(form, model, pk, SumRoute::Auto, opts.expsum);
                b_m = B.real();
                have_B = true;
            } catch (const budget_error&) {
            }
        }
        if (have_B) {
            B_partial += b_m;
            row.B_partial = B_partial;
            if (have_M) row.discrepancy = std::abs(row.pmM - B_partial);
            if (std::abs(b_m) < opts.stabilization_tol) {
                if (++consecutive_small >= 2 && !seq.stabilized) {
                    seq.stabilized = true;
                    seq.stabilization_depth = m;
                }
            } else {
                consecutive_small = 0;
            }
        } else {
            row.budget_skipped = true;
        }
        seq.rows.push_back(row);
    }
    return seq;
}

ConditionBResult search_condition_B(const QuadraticForm& form, int k, i64 budget,
                                    u64 seed) {
    if (k < 2) throw input_error("condition B search needs k >= 2");
    ConditionBResult out;
    BigInt det = form.determinant();
    BigInt base = 2 * boost::multiprecision::abs(det);

    // bad primes: factor 2|det F| by trial division
    BigInt rest = base;
    for (i64 p = 2; p <= 1000000 && rest > 1; p += (p == 2 ? 1 : 2)) {
        if (rest % p == 0) {
            out.bad_primes.push_back(p);
            while (rest % p == 0) rest /= p;
        }
    }
    if (rest > 1) {
        // a giant prime (or unfactored) part: bail out explicitly
        throw budget_error("condition_b_factor_limit",
                           static_cast<double>(boost::multiprecision::msb(rest)), 60.0);
    }

    BigInt modulus = 1;
    for (int i = 0; i < 2 * k - 1; ++i) modulus *= base;
    out.modulus = modulus;
    if (boost::multiprecision::msb(modulus) > 512)
        throw budget_error("condition_b_modulus_bits",
                           static_cast<double>(boost::multiprecision::msb(modulus)), 512.0);

    std::vector<BigInt> pk_list;
    for (i64 p : out.bad_primes) {
        BigInt pk = 1;
        for (int i = 0; i < k; ++i) pk *= p;
        pk_list.push_back(pk);
    }

    auto admissible = [&](const std::vector<BigInt>& x) {
        for (const auto& xi : x)
            for (const auto& pk : pk_list)
                if (xi % pk == 0) return false;
        BigInt v = 0;
        for (int i = 0; i < form.s; ++i) {
            BigInt row = 0;
            for (int j = 0; j < form.s; ++j) row += BigInt(form.at(i, j)) * x[j];
            v += x[i] * row;
        }
        return (v - form.t) % modulus == 0;
    };

    std::mt19937_64 rng(seed);
    unsigned bits = boost::multiprecision::msb(modulus) + 1;
    auto draw = [&]() {
        BigInt v = 0;
        for (unsigned got = 0; got < bits; got += 64) {
            v <<= 64;
            v += BigInt(rng());
        }
        return v % modulus;
    };

    for (i64 attempt = 0; attempt < budget; ++attempt) {
        std::vector<BigInt> x(form.s);
        if (attempt == 0) {
            for (auto& xi : x) xi = 1;
        } else {
            for (auto& xi : x) xi = draw();
        }
        ++out.attempts;
        if (admissible(x)) {
            out.found = true;
            out.witness = std::move(x);
            return out;
        }
    }
    return out;
}

} // namespace wcm
