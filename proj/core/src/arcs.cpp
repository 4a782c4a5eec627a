#include "wcm/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wcm/errors.hpp"
#include "wcm/realdens.hpp"

namespace wcm {

ArcSchedule arc_schedule(double X, double B_exp, double K_exp) {
    if (X <= std::exp(1.0)) throw input_error("arc_schedule needs X > e");
    ArcSchedule sched;
    sched.X = X;
    sched.B_exp = B_exp;
    sched.K_exp = K_exp;
    double L = std::log(X);
    sched.P = std::max<i64>(1, static_cast<i64>(std::floor(std::pow(L, B_exp))));
    sched.Q = X * X / static_cast<double>(sched.P);
    if (static_cast<double>(sched.P) >= sched.Q)
        throw input_error("arc order P is not below Q = X^2/P; increase X");
    for (i64 q = 1; q <= sched.P; ++q) {
        for (i64 a = 1; a <= q; ++a) {
            if (gcd_ll(a, q) != 1) continue;
            MajorArc arc;
            arc.a = a;
            arc.q = q;
            arc.center = static_cast<double>(a) / static_cast<double>(q);
            arc.half_width = 1.0 / (static_cast<double>(q) * sched.Q);
            sched.total_measure += 2.0 * arc.half_width;
            sched.arcs.push_back(arc);
        }
    }
    return sched;
}

RationalApprox rational_approx(double alpha, i64 qbound) {
    if (qbound < 1) throw input_error("rational_approx: qbound must be >= 1");
    // continued-fraction convergents of alpha
    i64 p_prev = 1, q_prev = 0;
    i64 p_cur = static_cast<i64>(std::floor(alpha));
    i64 q_cur = 1;
    double y = alpha - std::floor(alpha);
    for (int it = 0; it < 64 && y > 0; ++it) {
        double inv = 1.0 / y;
        if (inv > 9e17) break;
        i64 term = static_cast<i64>(std::floor(inv));
        y = inv - std::floor(inv);
        if (q_prev > (std::numeric_limits<i64>::max() - q_cur) / std::max<i64>(term, 1))
            break;
        i64 p_next = term * p_cur + p_prev;
        i64 q_next = term * q_cur + q_prev;
        if (q_next > qbound) {
            // the convergent after the bound certifies the Dirichlet property
            break;
        }
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        if (std::abs(alpha - static_cast<double>(p_cur) / static_cast<double>(q_cur)) == 0.0)
            break;
    }
    RationalApprox out;
    out.a = p_cur;
    out.q = q_cur;
    out.lambda = alpha - static_cast<double>(p_cur) / static_cast<double>(q_cur);
    return out;
}

WeylReport weyl_check(const QuadraticForm& form, const WeightModel& model, double X,
                      const std::vector<double>& alphas, const ExpSumOpts& opts) {
    WeylReport rep;
    rep.X = X;
    rep.r = check_L1(form).best.r;
    double maxF = static_cast<double>(form.max_abs_entry());
    double A = model.cumulative(X);
    double As = std::pow(A, form.s);
    for (double alpha : alphas) {
        WeylRow row;
        row.alpha = alpha;
        auto ra = rational_approx(alpha, static_cast<i64>(std::floor(X)));
        row.a = ra.a;
        row.q = ra.q;
        row.lambda = ra.lambda;
        double qfac = static_cast<double>(row.q) * (1.0 + X * X * std::abs(row.lambda));
        double base = 1.0 / X + 1.0 / qfac + qfac / (X * X);
        row.rhs = maxF * As * std::pow(base, rep.r / 2.0);
        try {
            row.S_abs = std::abs(S_alpha(form, model, X, alpha, opts));
            row.ratio = row.rhs > 0 ? row.S_abs / row.rhs : 0.0;
            rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        } catch (const budget_error&) {
            row.budget_skipped = true;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<double> minor_arc_samples(double X, i64 P, int per_stratum, int max_total,
                                      u64 seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    std::vector<double> out;
    double X2 = X * X;
    for (i64 Pj = 2 * P; static_cast<double>(Pj) <= X && static_cast<int>(out.size()) < max_total;
         Pj *= 2) {
        i64 lo = Pj / 2 + 1, hi = Pj;
        for (int i = 0; i < per_stratum && static_cast<int>(out.size()) < max_total; ++i) {
            i64 q = lo + static_cast<i64>(rng() % static_cast<u64>(hi - lo + 1));
            i64 a = 1 + static_cast<i64>(rng() % static_cast<u64>(q));
            while (gcd_ll(a, q) != 1) a = 1 + static_cast<i64>(rng() % static_cast<u64>(q));
            // push the point just past the arc boundary of its own level
            double lam = (static_cast<double>(Pj / 2) * (0.5 + 0.5 * ud(rng))) /
                         (static_cast<double>(q) * X2);
            if (rng() & 1) lam = -lam;
            double alpha = static_cast<double>(a) / static_cast<double>(q) + lam;
            alpha -= std::floor(alpha);
            out.push_back(alpha);
        }
    }
    return out;
}

FactorizationCheck major_factorization_check(const QuadraticForm& form,
                                             const WeightModel& model, double alpha,
                                             double X, i64 qbound, int smooth_order,
                                             const ExpSumOpts& opts) {
    if (form.s > 3) throw budget_error("factorization_dim", form.s, 3);
    FactorizationCheck out;
    out.X = X;
    out.alpha = alpha;
    auto ra = rational_approx(alpha, qbound);
    out.a = ra.a;
    out.q = ra.q;
    out.lambda = ra.lambda;
    out.S = S_alpha(form, model, X, alpha, opts);
    out.S_qa = S_t_qa(form, model, ra.q, mod_floor(ra.a, std::max<i64>(ra.q, 1)), 0,
                      SumRoute::Auto, opts);
    out.I = singular_integral_I(form, model, X, ra.lambda, smooth_order);
    std::complex<double> main = out.S_qa * out.I;
    double As = std::pow(model.cumulative(X), form.s);
    if (std::abs(main) < 1e-6 * As) {
        out.too_small = true;
        return out;
    }
    out.relative_error = std::abs(out.S - main) / std::abs(main);
    return out;
}

} // namespace wcm
