#include "wcm/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "wcm/errors.hpp"
#include "wcm/gauss.hpp"
#include "wcm/kahan.hpp"
#include "wcm/parallel.hpp"

namespace wcm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double frac_mul(double alpha, i64 n) {
    if (n == 0 || alpha == 0.0) return 0.0;
    int e;
    double mant = std::frexp(alpha, &e); // alpha = mant * 2^e, |mant| in [0.5, 1)
    i64 m = static_cast<i64>(std::ldexp(mant, 53)); // exact 53-bit integer
    int shift = 53 - e;                              // alpha = m * 2^-shift
    if (shift <= 0) return 0.0;                      // alpha * n is an integer
    if (shift >= 120) {
        // |alpha * n| < 2^-4; no wrap-around possible
        double v = alpha * static_cast<double>(n);
        return v - std::floor(v);
    }
    __int128 prod = static_cast<__int128>(m) * n;
    unsigned __int128 mask = (static_cast<unsigned __int128>(1) << shift) - 1;
    unsigned __int128 r = static_cast<unsigned __int128>(prod) & mask;
    return std::ldexp(static_cast<double>(r), -shift);
}

std::complex<double> unit_phase(double frac) {
    double ang = kTwoPi * frac;
    return {std::cos(ang), std::sin(ang)};
}

// ---- S(alpha) --------------------------------------------------------

namespace {

struct AlphaContext {
    const QuadraticForm& form;
    double alpha;
    i64 Xint;
    std::vector<double> w;                                    // dense weights
    std::vector<i64> sup;                                     // support points
    std::vector<std::vector<std::complex<double>>> diag;      // e(alpha F_dd v^2)
};

// Walks coordinate d over 0..Xint. The linear phase in v is advanced by a
// one-multiply recurrence, resynchronized from the exact reduction every
// 1024 steps so drift never accumulates past ~1e-13.
void alpha_walk(const AlphaContext& ctx, int d, i64 cross_coeff,
                std::complex<double> prefix_phase, double prefix_weight,
                std::vector<i64>& xs, KahanComplex& acc) {
    const int s = ctx.form.s;
    std::complex<double> cross{1.0, 0.0};
    const std::complex<double> cross_mul = unit_phase(frac_mul(ctx.alpha, cross_coeff));
    const auto& diag = ctx.diag[d];
    if (d == s - 1) {
        for (i64 v = 0; v <= ctx.Xint; ++v) {
            double wv = ctx.w[v];
            if (wv != 0.0)
                acc.add(prefix_weight * wv * (prefix_phase * diag[v] * cross));
            cross *= cross_mul;
            if ((v & 1023) == 1023)
                cross = unit_phase(frac_mul(ctx.alpha, cross_coeff * (v + 1)));
        }
        return;
    }
    const int next = std::min(d + 1, s - 1);
    for (i64 v = 0; v <= ctx.Xint; ++v) {
        double wv = ctx.w[v];
        if (wv != 0.0) {
            std::complex<double> phase = prefix_phase * diag[v] * cross;
            xs[d] = v;
            i64 child_coeff = 0;
            for (int j = 0; j <= d && j < s; ++j)
                child_coeff += 2 * ctx.form.at(j, next) * xs[j];
            alpha_walk(ctx, d + 1, child_coeff, phase, prefix_weight * wv, xs, acc);
        }
        cross *= cross_mul;
        if ((v & 1023) == 1023)
            cross = unit_phase(frac_mul(ctx.alpha, cross_coeff * (v + 1)));
    }
}

} // namespace

std::complex<double> S_alpha(const QuadraticForm& form, const WeightModel& model,
                             double X, double alpha, const ExpSumOpts& opts) {
    if (X < 0) throw input_error("S_alpha: X must be >= 0");
    i64 Xint = static_cast<i64>(std::floor(X));
    AlphaContext ctx{form, alpha, Xint, {}, {}, {}};
    ctx.sup = model.support(Xint);
    double tuples = std::pow(static_cast<double>(std::max<size_t>(ctx.sup.size(), 1)),
                             form.s);
    if (tuples > opts.s_alpha_cap)
        throw budget_error("s_alpha_cap", tuples, opts.s_alpha_cap);
    if (ctx.sup.empty()) return {0.0, 0.0};

    ctx.w.assign(Xint + 1, 0.0);
    for (i64 x : ctx.sup) ctx.w[x] = model.weight_at(x);
    ctx.diag.resize(form.s);
    for (int d = 0; d < form.s; ++d) {
        ctx.diag[d].resize(Xint + 1);
        for (i64 v = 0; v <= Xint; ++v)
            ctx.diag[d][v] = unit_phase(frac_mul(alpha, form.at(d, d) * v * v));
    }

    if (form.s == 1) {
        KahanComplex acc;
        std::vector<i64> xs(1, 0);
        alpha_walk(ctx, 0, 0, {1.0, 0.0}, 1.0, xs, acc);
        return acc.value();
    }

    // one partition per leading support point, combined in ascending order
    std::function<KahanComplex(std::size_t)> part = [&](std::size_t i) {
        KahanComplex acc;
        std::vector<i64> xs(form.s, 0);
        i64 v0 = ctx.sup[i];
        xs[0] = v0;
        std::complex<double> phase = ctx.diag[0][v0];
        i64 child_coeff = 2 * ctx.form.at(0, 1) * v0;
        alpha_walk(ctx, 1, child_coeff, phase, ctx.w[v0], xs, acc);
        return acc;
    };
    KahanComplex total;
    std::function<void(std::size_t, KahanComplex&)> comb =
        [&](std::size_t, KahanComplex& r) { total.add(r); };
    partitioned_run<KahanComplex>(ctx.sup.size(), opts.threads, part, comb);
    return total.value();
}

// ---- mod-q distributions and S_t(q, a) --------------------------------

std::vector<double> mod_q_weight_distribution(const QuadraticForm& form,
                                              const WeightModel& model, i64 q,
                                              const ExpSumOpts& opts) {
    if (q < 1) throw input_error("modulus must be >= 1");
    const int s = form.s;
    std::vector<double> kap(q);
    std::vector<i64> res;
    for (i64 h = 0; h < q; ++h) {
        kap[h] = model.kappa(q, h).to_double();
        if (kap[h] != 0.0) res.push_back(h);
    }
    double tuples = std::pow(static_cast<double>(std::max<size_t>(res.size(), 1)), s);
    if (tuples > opts.st_cap) throw budget_error("st_cap", tuples, opts.st_cap);

    std::vector<KahanSum> bins(q);
    // nested residue enumeration with incremental value and linear terms
    std::vector<std::vector<i64>> lin_stack(s + 1, std::vector<i64>(s, 0));
    std::vector<i64> val_stack(s + 1, 0);
    std::vector<double> kw_stack(s + 1, 1.0);
    std::vector<size_t> idx(s, 0);

    std::vector<i64> fdd(s);
    for (int i = 0; i < s; ++i) fdd[i] = mod_floor(form.at(i, i), q);

    int d = 0;
    val_stack[0] = 0;
    kw_stack[0] = 1.0;
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
        if (d == s - 1) {
            bins[val].add(kw);
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

    std::vector<double> out(q);
    for (i64 w = 0; w < q; ++w) out[w] = bins[w].value();
    return out;
}

namespace {

std::complex<double> S_t_direct(const QuadraticForm& form, const WeightModel& model,
                                i64 q, i64 a, i64 t, const ExpSumOpts& opts) {
    auto N = mod_q_weight_distribution(form, model, q, opts);
    std::vector<std::complex<double>> roots(q);
    for (i64 j = 0; j < q; ++j) roots[j] = unit_phase(static_cast<double>(j) / q);
    i64 tm = mod_floor(t, q);
    i64 am = mod_floor(a, q);
    KahanComplex acc;
    for (i64 w = 0; w < q; ++w)
        if (N[w] != 0.0)
            acc.add(N[w] * roots[mul_mod(am, mod_floor(w - tm, q), q)]);
    return acc.value();
}

// Diagonalized data for the Gauss-sum evaluation of S_t at odd prime powers.
// For the prime-indicator model the unit-coordinate constraint is opened up
// by inclusion-exclusion over the subset of coordinates divisible by p; each
// subset contributes a complete sum of a rescaled form.
struct PrimePowerPlan {
    i64 p = 0;
    int k = 0;
    i64 q = 0;
    bool primes_model = false;
    // (sign * p^-|T|, diagonal of the rescaled form)
    std::vector<std::pair<double, std::vector<i64>>> subsets;
    double kappa_norm = 1.0; // q^-s (unit) or phi(q)^-s (primes)
};

PrimePowerPlan make_prime_power_plan(const QuadraticForm& form, const WeightModel& model,
                                     i64 p, int k) {
    PrimePowerPlan plan;
    plan.p = p;
    plan.k = k;
    plan.q = 1;
    for (int i = 0; i < k; ++i) plan.q *= p;
    plan.primes_model = model.kind() == WeightKind::Primes;
    const int s = form.s;

    auto base = std::vector<std::vector<i64>>(s, std::vector<i64>(s));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) base[i][j] = mod_floor(form.at(i, j), plan.q);

    if (!plan.primes_model) {
        plan.subsets.emplace_back(1.0, diagonalize_mod_pk(base, p, k));
        plan.kappa_norm = std::pow(static_cast<double>(plan.q), -s);
        return plan;
    }
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
        auto M = base;
        int bits = 0;
        for (int i = 0; i < s; ++i)
            if (mask & (1u << i)) {
                ++bits;
                for (int j = 0; j < s; ++j) {
                    M[i][j] = mod_floor(M[i][j] * p, plan.q);
                    M[j][i] = M[i][j];
                }
                M[i][i] = mod_floor(M[i][i] * p, plan.q); // scaled twice on the diagonal
            }
        double coef = (bits % 2 ? -1.0 : 1.0) * std::pow(static_cast<double>(p), -bits);
        plan.subsets.emplace_back(coef, diagonalize_mod_pk(M, p, k));
        (void)bits;
    }
    plan.kappa_norm = std::pow(static_cast<double>(euler_phi(plan.q)), -s);
    return plan;
}

std::complex<double> S_t_from_plan(const PrimePowerPlan& plan, i64 a, i64 t) {
    i64 q = plan.q;
    std::complex<double> sum{0.0, 0.0};
    for (const auto& [coef, diag] : plan.subsets) {
        std::complex<double> w{1.0, 0.0};
        for (i64 di : diag) w *= gauss_sum_pk(mul_mod(mod_floor(a, q), mod_floor(di, q), q),
                                              plan.p, plan.k);
        sum += coef * w;
    }
    i64 shift = mod_floor(-mul_mod(mod_floor(a, q), mod_floor(t, q), q), q);
    return plan.kappa_norm * sum * unit_phase(static_cast<double>(shift) / q);
}

bool fast_route_available(const WeightModel& model, i64 p) {
    if (p == 2) return false; // 2-adic Gauss sums are not evaluated in closed form here
    return model.kind() == WeightKind::Unit || model.kind() == WeightKind::Primes;
}

double direct_cost(const WeightModel& model, i64 q, int s) {
    i64 nres = 0;
    for (i64 h = 0; h < q; ++h)
        if (!model.kappa(q, h).is_zero()) ++nres;
    return std::pow(static_cast<double>(std::max<i64>(nres, 1)), s);
}

std::complex<double> S_t_dispatch(const QuadraticForm& form, const WeightModel& model,
                                  i64 q, i64 a, i64 t, SumRoute route,
                                  const ExpSumOpts& opts);

std::complex<double> S_t_prime_power(const QuadraticForm& form, const WeightModel& model,
                                     i64 p, int k, i64 a, i64 t, SumRoute route,
                                     const ExpSumOpts& opts) {
    i64 q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    if (route == SumRoute::Direct) return S_t_direct(form, model, q, a, t, opts);
    bool fast_ok = fast_route_available(model, p);
    if (route == SumRoute::Fast) {
        if (!fast_ok) return S_t_direct(form, model, q, a, t, opts);
        return S_t_from_plan(make_prime_power_plan(form, model, p, k), a, t);
    }
    // Auto: small direct enumerations stay direct, larger ones take Gauss sums
    double cost = direct_cost(model, q, form.s);
    if (cost <= 2e6 || !fast_ok) return S_t_direct(form, model, q, a, t, opts);
    return S_t_from_plan(make_prime_power_plan(form, model, p, k), a, t);
}

std::complex<double> S_t_dispatch(const QuadraticForm& form, const WeightModel& model,
                                  i64 q, i64 a, i64 t, SumRoute route,
                                  const ExpSumOpts& opts) {
    if (q == 1) return {1.0, 0.0};
    auto fac = factorize(q);
    bool custom = model.kind() == WeightKind::Custom;
    if (fac.size() == 1 && !custom)
        return S_t_prime_power(form, model, fac[0].first, fac[0].second, a, t, route, opts);
    if (route == SumRoute::Direct || custom)
        return S_t_direct(form, model, q, a, t, opts);
    if (route == SumRoute::Auto && direct_cost(model, q, form.s) <= 2e6)
        return S_t_direct(form, model, q, a, t, opts);
    // coprime split: S_t(q, a) = prod_i S_t(q_i, a * (q/q_i)^-1 mod q_i)
    std::complex<double> out{1.0, 0.0};
    for (auto [p, e] : fac) {
        i64 qi = 1;
        for (int i = 0; i < e; ++i) qi *= p;
        i64 cof = mod_floor(q / qi, qi);
        i64 ai = mul_mod(mod_floor(a, qi), inv_mod(cof, qi), qi);
        out *= S_t_prime_power(form, model, p, e, ai, t, route, opts);
    }
    return out;
}

} // namespace

std::complex<double> S_t_qa(const QuadraticForm& form, const WeightModel& model,
                            i64 q, i64 a, i64 t, SumRoute route, const ExpSumOpts& opts) {
    if (q < 1) throw input_error("S_t_qa: modulus must be >= 1");
    return S_t_dispatch(form, model, q, a, t, route, opts);
}

std::complex<double> B_q(const QuadraticForm& form, const WeightModel& model, i64 q,
                         SumRoute route, const ExpSumOpts& opts) {
    if (q < 1) throw input_error("B_q: modulus must be >= 1");
    if (q == 1) return {1.0, 0.0};
    const i64 t = form.t;
    auto fac = factorize(q);

    if (route != SumRoute::Direct && fac.size() > 1 &&
        model.kind() != WeightKind::Custom) {
        // B is multiplicative over coprime moduli (kappa satisfies the
        // coprime product identity for every built-in model)
        std::complex<double> out{1.0, 0.0};
        for (auto [p, e] : fac) {
            i64 qi = 1;
            for (int i = 0; i < e; ++i) qi *= p;
            out *= B_q(form, model, qi, route, opts);
        }
        return out;
    }

    bool use_plan = route != SumRoute::Direct && fac.size() == 1 &&
                    fast_route_available(model, fac[0].first) &&
                    (route == SumRoute::Fast || direct_cost(model, q, form.s) > 2e6);
    KahanComplex acc;
    if (use_plan) {
        auto plan = make_prime_power_plan(form, model, fac[0].first, fac[0].second);
        for (i64 a = 1; a <= q; ++a)
            if (gcd_ll(a, q) == 1) acc.add(S_t_from_plan(plan, a, t));
        return acc.value();
    }
    // share the residue distribution across all a
    auto N = mod_q_weight_distribution(form, model, q, opts);
    std::vector<std::complex<double>> roots(q);
    for (i64 j = 0; j < q; ++j) roots[j] = unit_phase(static_cast<double>(j) / q);
    i64 tm = mod_floor(t, q);
    for (i64 a = 1; a <= q; ++a) {
        if (gcd_ll(a, q) != 1) continue;
        KahanComplex one;
        for (i64 w = 0; w < q; ++w)
            if (N[w] != 0.0)
                one.add(N[w] * roots[mul_mod(a, mod_floor(w - tm, q), q)]);
        acc.add(one);
    }
    return acc.value();
}

// ---- singular series ---------------------------------------------------

SingularSeriesReport singular_series(const QuadraticForm& form,
                                     const WeightModel& model, i64 P,
                                     int per_prime_depth, const ExpSumOpts& opts) {
    if (P < 1) throw input_error("singular_series: P must be >= 1");
    SingularSeriesReport rep;
    rep.P = P;
    rep.per_prime_depth = per_prime_depth;
    rep.im_tolerance = 1e-9;

    if (form.s <= 24) {
        rep.r = check_L1(form).best.r;
    } else {
        rep.r = 0;
    }
    rep.r_warning = rep.r < 5;

    // prime-power rows first (they seed the multiplicative composites)
    std::vector<uint8_t> sieve = prime_sieve(P);
    struct PP {
        bool ok = false;
        std::complex<double> B{0, 0};
        std::string route;
    };
    std::map<i64, PP> prime_power; // q = p^k -> value
    std::vector<i64> primes;
    for (i64 p = 2; p <= P; ++p)
        if (sieve[p]) primes.push_back(p);

    for (i64 p : primes) {
        bool budget_hit = false;
        for (i64 pk = p; pk <= P; pk *= p) {
            PP row;
            if (!budget_hit) {
                try {
                    row.B = B_q(form, model, pk, SumRoute::Auto, opts);
                    row.ok = true;
                    row.route = fast_route_available(model, p) &&
                                        direct_cost(model, pk, form.s) > 2e6
                                    ? "gauss"
                                    : "direct";
                } catch (const budget_error&) {
                    budget_hit = true; // deeper powers only get more expensive
                }
            }
            prime_power[pk] = row;
            if (pk > P / p) break;
        }
    }

    rep.per_q.push_back({1, {1.0, 0.0}, 0.0, "unit", false});
    KahanSum total;
    total.add(1.0);
    for (i64 q = 2; q <= P; ++q) {
        PerQRow row;
        row.q = q;
        auto fac = factorize(q);
        std::complex<double> prod{1.0, 0.0};
        bool ok = true;
        for (auto [p, e] : fac) {
            i64 pk = 1;
            for (int i = 0; i < e; ++i) pk *= p;
            auto it = prime_power.find(pk);
            if (it == prime_power.end() || !it->second.ok) {
                ok = false;
                break;
            }
            prod *= it->second.B;
        }
        if (!ok) {
            row.skipped = true;
            row.route = "skipped";
            rep.skipped_q.push_back(q);
        } else {
            row.B = prod;
            row.im_residual = std::abs(prod.imag());
            row.route = fac.size() == 1 ? prime_power[q].route : "crt";
            total.add(prod.real());
        }
        rep.per_q.push_back(std::move(row));
    }
    rep.S_P = total.value();

    // per-prime partial sums of B(p^k) up to the requested depth
    for (i64 p : primes) {
        PerPrimeRow pr;
        pr.p = p;
        std::complex<double> acc{1.0, 0.0};
        pr.partial.push_back(acc); // m = 0
        i64 pk = 1;
        for (int k = 1; k <= per_prime_depth; ++k) {
            if (pk > (std::numeric_limits<i64>::max() / p) / 2) break;
            pk *= p;
            std::complex<double> b;
            auto it = prime_power.find(pk);
            if (it != prime_power.end() && it->second.ok) {
                b = it->second.B;
            } else {
                try {
                    b = B_q(form, model, pk, SumRoute::Auto, opts);
                } catch (const budget_error&) {
                    break;
                }
            }
            acc += b;
            pr.partial.push_back(acc);
            pr.computed_depth = k;
        }
        rep.per_prime.push_back(std::move(pr));
    }

    // Euler product over audited primes, truncated at p^k <= P
    double euler = 1.0;
    for (i64 p : primes) {
        std::complex<double> chi{1.0, 0.0};
        for (i64 pk = p; pk <= P; pk *= p) {
            auto it = prime_power.find(pk);
            if (it != prime_power.end() && it->second.ok) chi += it->second.B;
            if (pk > P / p) break;
        }
        euler *= chi.real();
    }
    rep.euler_product = euler;

    // tail constant fitted on the largest audited decade
    double cfit = 0.0;
    i64 lo = std::max<i64>(2, P / 10);
    for (const auto& row : rep.per_q) {
        if (row.skipped || row.q < lo || row.q == 1) continue;
        double scale = std::pow(static_cast<double>(row.q), rep.r / 2.0 - 1.0);
        cfit = std::max(cfit, std::abs(row.B) * scale);
    }
    rep.C_fit = cfit;
    rep.tail_estimate = cfit / std::sqrt(static_cast<double>(P));
    return rep;
}

} // namespace wcm
