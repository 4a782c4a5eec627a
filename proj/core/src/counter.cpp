#include "wcm/counter.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "wcm/errors.hpp"
#include "wcm/kahan.hpp"
#include "wcm/parallel.hpp"

namespace wcm {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

u128 isqrt_u128(u128 n) {
    if (n == 0) return 0;
    u128 r = static_cast<u128>(sqrtl(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

struct CoordRange {
    i64 lo = 0, hi = -1; // inclusive; empty when hi < lo
    std::vector<i64> points;       // support points inside the range
    std::vector<double> weights;   // dense lookup, index z - lo
    double total_weight = 0.0;
    i64 support_count = 0;
};

CoordRange make_range(const WeightModel& model, i64 lo, i64 hi) {
    CoordRange r;
    r.lo = std::max<i64>(lo, 0);
    r.hi = hi;
    if (r.hi < r.lo) return r;
    r.weights.assign(r.hi - r.lo + 1, 0.0);
    for (i64 x : model.support(r.hi)) {
        if (x < r.lo) continue;
        double w = model.weight_at(x);
        r.points.push_back(x);
        r.weights[x - r.lo] = w;
        r.total_weight += w;
        ++r.support_count;
    }
    return r;
}

} // namespace

CountResult brute_count(const QuadraticForm& form, const WeightModel& model,
                        double X, const CountRegion& region, const CountOpts& opts) {
    if (X < 0) throw input_error("brute_count: X must be >= 0");
    const int s = form.s;
    if (region.is_box && static_cast<int>(region.lo.size()) != s)
        throw input_error("brute_count: region dimension mismatch");

    std::vector<CoordRange> ranges(s);
    for (int i = 0; i < s; ++i) {
        i64 lo = 0, hi = static_cast<i64>(std::floor(X));
        if (region.is_box) {
            lo = static_cast<i64>(std::ceil(X * region.lo[i] - 1e-9));
            hi = static_cast<i64>(std::floor(X * region.hi[i] + 1e-9));
        }
        ranges[i] = make_range(model, lo, hi);
    }

    CountResult out;
    out.prefix_tuples = 1.0;
    for (int i = 0; i + 1 < s; ++i)
        out.prefix_tuples *= static_cast<double>(std::max<i64>(ranges[i].support_count, 1));
    if (out.prefix_tuples > opts.cap)
        throw budget_error("count_cap", out.prefix_tuples, opts.cap);
    out.is_exact = model.is_indicator();

    for (int i = 0; i < s; ++i)
        if (ranges[i].points.empty()) {
            out.value = 0;
            out.exact = 0;
            return out;
        }

    const CoordRange& last = ranges[s - 1];
    const i64 a_coef = form.at(s - 1, s - 1);
    const i64 t = form.t;

    // weight (and exact count) of an admissible last coordinate
    auto last_weight = [&](i64 z) -> double {
        if (z < last.lo || z > last.hi) return 0.0;
        return last.weights[z - last.lo];
    };

    struct Partial {
        KahanSum sum;
        BigInt exact = 0;
    };

    // enumerate prefixes with incremental value and linear coefficients;
    // partition on the first coordinate for the parallel run
    auto run_partition = [&](std::size_t pi) {
        Partial part;
        std::vector<std::vector<i64>> lin_stack(s + 1, std::vector<i64>(s, 0));
        std::vector<i64> val_stack(s + 1, 0);
        std::vector<double> w_stack(s + 1, 1.0);
        std::vector<size_t> idx(s, 0);

        auto push = [&](int d, i64 x, double w) {
            val_stack[d + 1] =
                val_stack[d] + form.at(d, d) * x * x + lin_stack[d][d] * x;
            w_stack[d + 1] = w_stack[d] * w;
            for (int j = d + 1; j < s; ++j)
                lin_stack[d + 1][j] = lin_stack[d][j] + 2 * form.at(d, j) * x;
        };
        auto solve_last = [&](int d) {
            // f(prefix, z) = t with z the last coordinate
            const i64 b = lin_stack[d][s - 1];
            const i64 c0 = val_stack[d];
            const double wp = w_stack[d];
            auto add_z = [&](i64 z) {
                double wz = last_weight(z);
                if (wz == 0.0) return;
                part.sum.add(wp * wz);
                if (model.is_indicator()) part.exact += 1;
            };
            if (a_coef != 0) {
                i128 disc = static_cast<i128>(b) * b -
                            static_cast<i128>(4) * a_coef * (c0 - t);
                if (disc < 0) return;
                u128 root = isqrt_u128(static_cast<u128>(disc));
                if (static_cast<i128>(root) * static_cast<i128>(root) != disc) return;
                i128 den = 2 * static_cast<i128>(a_coef);
                for (int sign : {1, -1}) {
                    i128 num = -static_cast<i128>(b) + sign * static_cast<i128>(root);
                    if (num % den != 0) continue;
                    i64 z = static_cast<i64>(num / den);
                    add_z(z);
                    if (root == 0) break; // double root counted once
                }
            } else if (b != 0) {
                i64 num = t - c0;
                if (num % b != 0) return;
                add_z(num / b);
            } else {
                if (c0 != t) return;
                // every admissible z solves the equation
                part.sum.add(wp * last.total_weight);
                if (model.is_indicator()) part.exact += last.support_count;
            }
        };

        if (s == 1) {
            if (pi > 0) return part;
            solve_last(0);
            return part;
        }

        push(0, ranges[0].points[pi], ranges[0].weights[ranges[0].points[pi] - ranges[0].lo]);
        if (s == 2) {
            solve_last(1);
            return part;
        }
        int d = 1;
        idx[1] = 0;
        while (d >= 1) {
            if (idx[d] == ranges[d].points.size()) {
                --d;
                if (d >= 1) ++idx[d];
                continue;
            }
            i64 x = ranges[d].points[idx[d]];
            push(d, x, ranges[d].weights[x - ranges[d].lo]);
            if (d == s - 2) {
                solve_last(d + 1);
                ++idx[d];
                continue;
            }
            ++d;
            idx[d] = 0;
        }
        return part;
    };

    std::size_t nparts = s == 1 ? 1 : ranges[0].points.size();
    KahanSum total;
    BigInt exact = 0;
    std::function<Partial(std::size_t)> fn = run_partition;
    std::function<void(std::size_t, Partial&)> merge = [&](std::size_t, Partial& p) {
        total.add(p.sum);
        exact += p.exact;
    };
    partitioned_run<Partial>(nparts, opts.threads, fn, merge);

    out.exact = exact;
    out.value = model.is_indicator() ? static_cast<double>(exact) : total.value();
    return out;
}

namespace {

i64 nearest_support_point(const WeightModel& model, double target, i64 limit) {
    auto sup = model.support(limit);
    if (sup.empty()) throw infeasibility_error("weight support is empty below the box scale");
    i64 best = sup[0];
    for (i64 x : sup)
        if (std::abs(static_cast<double>(x) - target) <
            std::abs(static_cast<double>(best) - target))
            best = x;
    return best;
}

} // namespace

std::vector<PredictionReport> predict_compare(const QuadraticForm& form,
                                              const WeightModel& model,
                                              const std::vector<double>& X_grid,
                                              const PredictOpts& opts) {
    if (X_grid.empty()) throw input_error("predict_compare: empty X grid");

    bool l1 = false;
    std::string l1_note;
    if (form.s <= 24) {
        l1 = check_L1(form).satisfied;
        if (!l1) l1_note = "hypothesis not met: coupling rank below 5";
    } else {
        l1_note = "hypothesis unchecked: partition search refused for s > 24";
    }

    std::vector<double> base_center;
    if (!opts.center.empty()) {
        if (static_cast<int>(opts.center.size()) != form.s)
            throw input_error("predict_compare: center has wrong dimension");
        base_center = opts.center;
    } else {
        base_center = find_positive_zero(form, PositiveZeroOpts{opts.seed});
    }

    std::vector<PredictionReport> reports;
    for (double X : X_grid) {
        PredictionReport rep;
        rep.X = X;
        rep.l1_satisfied = l1;
        if (!l1_note.empty()) rep.warnings.push_back(l1_note);

        std::vector<double> x0 = base_center;
        i64 t = form.t;
        if (opts.adaptive_t) {
            // snap the scaled center to the weight support so the defining
            // point itself carries nonzero weight, then read the target off it
            std::vector<i64> u(form.s);
            i64 limit = static_cast<i64>(std::ceil(X * 4.0)) + 4;
            for (int i = 0; i < form.s; ++i)
                u[i] = nearest_support_point(model, X * base_center[i], limit);
            BigInt tv = form.evaluate(std::span<const i64>(u));
            if (boost::multiprecision::abs(tv) > BigInt(1) << 62)
                throw input_error("adaptive target overflows the counter range");
            t = tv.convert_to<i64>();
            for (int i = 0; i < form.s; ++i)
                x0[i] = static_cast<double>(u[i]) / X;
        }
        rep.t = t;

        double eta = opts.eta;
        if (eta <= 0) {
            double mn = *std::min_element(x0.begin(), x0.end());
            eta = 0.1 * mn;
        }
        rep.eta = eta;

        QuadraticForm shifted = form;
        shifted.t = t;
        BoxSpec box = build_box(shifted, t, X, eta, x0);
        rep.box_center = box.xstar;

        // largest smooth order whose psi stays positive on the scaled box
        int m = std::max(1, opts.smooth_order);
        while (m > 1 &&
               model.smooth(m).threshold > X * *std::min_element(box.lo.begin(), box.lo.end()))
            --m;
        if (model.smooth(m).threshold >
            X * *std::min_element(box.lo.begin(), box.lo.end()))
            rep.warnings.push_back("psi vanishes on part of the box at order 1");
        rep.smooth_order = m;

        auto ss = singular_series(shifted, model, opts.P, opts.prime_depth, opts.expsum);
        rep.S_P = ss.S_P;
        rep.tail_estimate = ss.tail_estimate;
        if (!ss.skipped_q.empty())
            rep.warnings.push_back("singular series skipped " +
                                   std::to_string(ss.skipped_q.size()) +
                                   " moduli over budget");

        SigmaOpts sopts;
        sopts.smooth_order = m;
        sopts.threads = opts.threads;
        auto sig = sigma_infinity(shifted, model, box, X, opts.samples, opts.seed, sopts);
        rep.sigma_inf = sig.slab.value;
        rep.sigma_stderr = sig.slab.stderr_;
        rep.sigma_coarea = sig.coarea.value;
        if (!sig.consistent)
            rep.warnings.push_back("slab and coarea estimators disagree beyond 3 sigma");

        rep.A_X = model.cumulative(X);
        double scale = std::pow(rep.A_X, form.s) / (X * X);
        rep.main_term = rep.S_P * rep.sigma_inf * scale;
        rep.main_stderr = std::abs(rep.S_P) * rep.sigma_stderr * scale;

        rep.main_term_indistinguishable = std::abs(rep.S_P) <= ss.tail_estimate;
        if (rep.main_term_indistinguishable)
            rep.warnings.push_back("main term indistinguishable from 0 at this truncation");

        CountResult cnt = brute_count(shifted, model, X, CountRegion::from_box(box),
                                      opts.count);
        rep.count = cnt.value;
        rep.count_exact = cnt.is_exact;
        rep.ratio = rep.main_term > 0 ? rep.count / rep.main_term : 0.0;
        reports.push_back(std::move(rep));
    }
    return reports;
}

} // namespace wcm
