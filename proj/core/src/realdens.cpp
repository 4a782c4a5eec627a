#include "wcm/realdens.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "wcm/errors.hpp"
#include "wcm/expsums.hpp"
#include "wcm/kahan.hpp"
#include "wcm/parallel.hpp"

namespace wcm {

double BoxSpec::volume() const {
    double v = 1.0;
    for (size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
}

namespace {

// roots of F_jj u^2 + b u + c = rhs in the coordinate j, all other
// coordinates fixed
std::vector<double> coordinate_solutions(const QuadraticForm& form,
                                         std::span<const double> x, int j,
                                         double rhs) {
    double a = static_cast<double>(form.at(j, j));
    double b = 0.0;
    for (int k = 0; k < form.s; ++k)
        if (k != j) b += 2.0 * static_cast<double>(form.at(j, k)) * x[k];
    std::vector<double> y(x.begin(), x.end());
    y[j] = 0.0;
    double c = form.evaluate_real(y) - rhs;
    std::vector<double> roots;
    if (a == 0.0) {
        if (b != 0.0) roots.push_back(-c / b);
        return roots;
    }
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return roots;
    double sq = std::sqrt(disc);
    // numerically stable pair
    double q = -0.5 * (b + (b >= 0 ? sq : -sq));
    roots.push_back(q / a);
    if (q != 0.0) roots.push_back(c / q);
    else roots.push_back(0.0);
    return roots;
}

double norm_inf(std::span<const double> v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

std::vector<double> find_positive_zero(const QuadraticForm& form,
                                       const PositiveZeroOpts& opts) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> ud(opts.lo, opts.hi);
    double fnorm = static_cast<double>(form.max_abs_entry()) * form.s;
    for (int start = 0; start < opts.starts; ++start) {
        std::vector<double> x(form.s);
        for (auto& xi : x) xi = ud(rng);
        // try coordinates by decreasing gradient magnitude
        auto g = form.gradient(x);
        std::vector<int> order(form.s);
        for (int i = 0; i < form.s; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return std::abs(g[a]) > std::abs(g[b]); });
        for (int j : order) {
            for (double root : coordinate_solutions(form, x, j, 0.0)) {
                if (!(root >= opts.margin) || !std::isfinite(root)) continue;
                std::vector<double> cand = x;
                cand[j] = root;
                double fv = form.evaluate_real(cand);
                double scale = fnorm * norm_inf(cand) * norm_inf(cand);
                if (std::abs(fv) > 1e-12 * std::max(scale, 1.0)) continue;
                auto grad = form.gradient(cand);
                double gn = 0;
                for (double gi : grad) gn += gi * gi;
                if (gn == 0.0) continue;
                bool positive = true;
                for (double xi : cand)
                    if (xi < opts.margin) positive = false;
                if (positive) return cand;
            }
        }
    }
    throw infeasibility_error(
        "no positive real zero found within the start budget; the form may be "
        "definite on the positive orthant");
}

BoxSpec build_box(const QuadraticForm& form, i64 t, double X, double eta,
                  std::span<const double> x0) {
    if (static_cast<int>(x0.size()) != form.s)
        throw input_error("build_box: x0 has wrong dimension");
    if (eta <= 0) throw input_error("build_box: eta must be positive");
    if (X <= 0) throw input_error("build_box: X must be positive");

    BoxSpec box;
    box.x0.assign(x0.begin(), x0.end());
    box.eta = eta;
    box.t0 = static_cast<double>(t) / (X * X);

    // adjust the coordinate with the largest gradient component
    auto g0 = form.gradient(x0);
    int J = 0;
    for (int j = 1; j < form.s; ++j)
        if (std::abs(g0[j]) > std::abs(g0[J])) J = j;

    box.xstar = box.x0;
    double best = std::numeric_limits<double>::infinity();
    for (double root : coordinate_solutions(form, x0, J, box.t0)) {
        if (!std::isfinite(root)) continue;
        double shift = std::abs(root - x0[J]);
        if (shift < best) {
            best = shift;
            box.xstar[J] = root;
        }
    }
    if (!std::isfinite(best))
        throw box_error("no real solution of f = t0 along the chosen coordinate; "
                        "increase X or pick another base point");
    if (best > eta / 2)
        throw box_error("level-set point drifted more than eta/2 from the base "
                        "point; increase X or decrease eta");

    double fstar = form.evaluate_real(box.xstar);
    if (std::abs(fstar - box.t0) > 1e-10 * (1.0 + std::abs(box.t0)))
        throw box_error("level equation not met to tolerance at the box center");

    box.grad = form.gradient(box.xstar);
    if (norm_inf(box.grad) < 1e-6)
        throw box_error("gradient too small at the box center");

    box.lo.resize(form.s);
    box.hi.resize(form.s);
    for (int i = 0; i < form.s; ++i) {
        box.lo[i] = box.xstar[i] - eta;
        box.hi[i] = box.xstar[i] + eta;
        if (box.lo[i] < eta)
            throw box_error("box leaves the positive orthant margin; decrease eta "
                            "or move the base point away from the axes");
    }
    // containment C1 subset B subset C2 (componentwise intervals)
    for (int i = 0; i < form.s; ++i) {
        double c1lo = box.x0[i] - eta / 2, c1hi = box.x0[i] + eta / 2;
        double c2lo = box.x0[i] - 2 * eta, c2hi = box.x0[i] + 2 * eta;
        if (!(c1lo >= box.lo[i] && c1hi <= box.hi[i] &&
              box.lo[i] >= c2lo && box.hi[i] <= c2hi))
            throw box_error("containment C1 in B in C2 violated");
    }
    return box;
}

// ---- sampling ----------------------------------------------------------

HaltonStream::HaltonStream(int dim, u64 seed) {
    auto sieve = prime_sieve(std::max(64, dim * 8));
    for (i64 p = 2; static_cast<int>(bases_.size()) < dim; ++p)
        if (sieve[p]) bases_.push_back(p);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    rot_.resize(dim);
    for (auto& r : rot_) r = ud(rng);
}

void HaltonStream::point(u64 index, double* out) const {
    for (size_t d = 0; d < bases_.size(); ++d) {
        double b = static_cast<double>(bases_[d]);
        double inv = 1.0 / b, f = inv, v = 0.0;
        u64 n = index + 1; // skip the origin
        while (n > 0) {
            v += f * static_cast<double>(n % bases_[d]);
            n /= bases_[d];
            f *= inv;
        }
        v += rot_[d];
        out[d] = v - std::floor(v);
    }
}

SigmaInfinityResult sigma_infinity(const QuadraticForm& form, const WeightModel& model,
                                   const BoxSpec& box, double X, i64 N, u64 seed,
                                   const SigmaOpts& opts) {
    if (N < 16) throw input_error("sigma_infinity needs N >= 16");
    const int s = form.s;
    auto smooth = model.smooth(opts.smooth_order);
    const double PsiX = smooth.Psi(X);
    if (PsiX <= 0) throw input_error("Psi(X) must be positive; raise X");
    const double wscale = X / PsiX;

    HaltonStream stream(s, seed);
    const double VB = box.volume();

    // pilot pass: level spread sets the slab half-width
    i64 pilot = std::min<i64>(N, 4096);
    std::vector<double> u(s);
    double mean = 0, m2 = 0;
    for (i64 i = 0; i < pilot; ++i) {
        stream.point(static_cast<u64>(i), u.data());
        for (int d = 0; d < s; ++d) u[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * u[d];
        double fv = form.evaluate_real(u) - box.t0;
        double delta = fv - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (fv - mean);
    }
    double sigma_f = std::sqrt(std::max(m2 / std::max<i64>(pilot - 1, 1), 0.0));
    double eps = std::max(sigma_f, 1e-12) * std::pow(static_cast<double>(N), -1.0 / 6.0);

    // shared-stream pass for both estimators
    int J = 0;
    for (int j = 1; j < s; ++j)
        if (std::abs(box.grad[j]) > std::abs(box.grad[J])) J = j;
    double Vperp = 1.0;
    for (int d = 0; d < s; ++d)
        if (d != J) Vperp *= box.hi[d] - box.lo[d];

    struct Partial {
        KahanSum slab_sum, slab_sq, co_sum, co_sq;
        i64 degenerate = 0;
    };
    const i64 block = 65536;
    const i64 nblocks = (N + block - 1) / block;

    std::function<Partial(std::size_t)> run_block = [&](std::size_t bi) {
        Partial part;
        std::vector<double> uu(s);
        i64 lo = static_cast<i64>(bi) * block;
        i64 hi = std::min<i64>(lo + block, N);
        for (i64 i = lo; i < hi; ++i) {
            stream.point(static_cast<u64>(i), uu.data());
            for (int d = 0; d < s; ++d)
                uu[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * uu[d];
            double w = 1.0;
            for (int d = 0; d < s; ++d) w *= wscale * smooth.psi(X * uu[d]);
            double fv = form.evaluate_real(uu) - box.t0;
            // slab with nested Richardson pair
            double v_eps = std::abs(fv) <= eps ? VB * w / (2 * eps) : 0.0;
            double v_half = std::abs(fv) <= eps / 2 ? VB * w / eps : 0.0;
            double v = (4.0 * v_half - v_eps) / 3.0;
            part.slab_sum.add(v);
            part.slab_sq.add(v * v);
            if (std::abs(fv) <= eps) {
                auto gr = form.gradient(uu);
                double gn = 0;
                for (double gi : gr) gn += gi * gi;
                if (std::sqrt(gn) < 1e-6) ++part.degenerate;
            }
            // exact section integral through the same point
            double co = 0.0;
            for (double root : coordinate_solutions(form, uu, J, box.t0)) {
                if (!(root >= box.lo[J] && root <= box.hi[J])) continue;
                std::vector<double> y(uu.begin(), uu.end());
                y[J] = root;
                double dj = 0.0;
                for (int k2 = 0; k2 < s; ++k2)
                    dj += 2.0 * static_cast<double>(form.at(J, k2)) * y[k2];
                if (std::abs(dj) < 1e-6) {
                    ++part.degenerate;
                    continue;
                }
                double wy = 1.0;
                for (int d = 0; d < s; ++d) wy *= wscale * smooth.psi(X * y[d]);
                co += Vperp * wy / std::abs(dj);
            }
            part.co_sum.add(co);
            part.co_sq.add(co * co);
        }
        return part;
    };

    Partial total;
    std::function<void(std::size_t, Partial&)> merge = [&](std::size_t, Partial& p) {
        total.slab_sum.add(p.slab_sum);
        total.slab_sq.add(p.slab_sq);
        total.co_sum.add(p.co_sum);
        total.co_sq.add(p.co_sq);
        total.degenerate += p.degenerate;
    };
    partitioned_run<Partial>(static_cast<std::size_t>(nblocks), opts.threads, run_block,
                             merge);

    if (total.degenerate > N / 100)
        throw conditioning_error("gradient nearly degenerate on more than 1% of samples");

    auto finish = [N, seed](const KahanSum& sum, const KahanSum& sq, const char* method) {
        DensityEstimate est;
        est.method = method;
        est.samples = N;
        est.seed = seed;
        double n = static_cast<double>(N);
        est.value = sum.value() / n;
        double var = std::max(sq.value() / n - est.value * est.value, 0.0);
        est.stderr_ = std::sqrt(var / n);
        return est;
    };

    SigmaInfinityResult out;
    out.slab = finish(total.slab_sum, total.slab_sq, "slab");
    out.coarea = finish(total.co_sum, total.co_sq, "coarea");
    out.epsilon = eps;
    double comb = std::sqrt(out.slab.stderr_ * out.slab.stderr_ +
                            out.coarea.stderr_ * out.coarea.stderr_);
    out.consistent = std::abs(out.slab.value - out.coarea.value) <= 3.0 * comb ||
                     (out.slab.value == 0.0 && out.coarea.value == 0.0);
    return out;
}

// ---- oscillatory quadrature ---------------------------------------------

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr int kGL = 16;
const double kGLx[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
const double kGLw[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

} // namespace

std::complex<double> singular_integral_I(const QuadraticForm& form,
                                         const WeightModel& model, double X,
                                         double lambda, int smooth_order,
                                         int max_panels_per_dim) {
    const int s = form.s;
    if (s > 3) throw budget_error("singular_integral_dim", s, 3);
    auto smooth = model.smooth(smooth_order);
    double lo = std::min(smooth.threshold, X);

    // panel edges: octave splits for psi plus phase-driven refinement
    double grad_scale = 2.0 * form.max_abs_entry() * s * X;
    double max_phase_step = 0.125; // revolutions per panel
    std::vector<double> edges;
    edges.push_back(lo);
    double cur = std::max(lo, 1e-9);
    while (cur < X) {
        double next = std::min(cur * 2.0, X);
        // limit the phase swing |lambda| * grad * du inside one panel
        double du_phase = std::abs(lambda) * grad_scale > 0
                              ? max_phase_step / (std::abs(lambda) * grad_scale)
                              : next - cur;
        int pieces = std::max(1, static_cast<int>(std::ceil((next - cur) / du_phase)));
        if (pieces > max_panels_per_dim)
            throw budget_error("singular_integral_panels", pieces, max_panels_per_dim);
        for (int i = 1; i <= pieces; ++i)
            edges.push_back(cur + (next - cur) * i / pieces);
        cur = next;
    }
    if (static_cast<int>(edges.size()) - 1 > max_panels_per_dim)
        throw budget_error("singular_integral_panels",
                           static_cast<double>(edges.size()) - 1, max_panels_per_dim);

    // tensor nodes per dimension
    std::vector<double> nodes, weights;
    for (size_t e = 0; e + 1 < edges.size(); ++e) {
        double a = edges[e], b = edges[e + 1];
        double h = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int i = 0; i < kGL; ++i) {
            nodes.push_back(mid + h * kGLx[i]);
            weights.push_back(h * kGLw[i]);
        }
    }

    const size_t n = nodes.size();
    std::vector<double> psi_vals(n);
    for (size_t i = 0; i < n; ++i) psi_vals[i] = smooth.psi(nodes[i]);

    KahanComplex acc;
    std::vector<size_t> idx(s, 0);
    std::vector<double> u(s);
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    for (;;) {
        double w = 1.0;
        for (int d = 0; d < s; ++d) {
            u[d] = nodes[idx[d]];
            w *= weights[idx[d]] * psi_vals[idx[d]];
        }
        if (w != 0.0) {
            double ang = kTwoPi * lambda * form.evaluate_real(u);
            acc.add(w * std::complex<double>(std::cos(ang), std::sin(ang)));
        }
        int d = s - 1;
        while (d >= 0 && ++idx[d] == n) {
            idx[d] = 0;
            --d;
        }
        if (d < 0) break;
    }
    return acc.value();
}

DensityEstimate main_term_integral(const QuadraticForm& form, const WeightModel& model,
                                   const BoxSpec& box, double X, i64 N, u64 seed,
                                   const SigmaOpts& opts) {
    auto sig = sigma_infinity(form, model, box, X, N, seed, opts);
    double As = std::pow(model.cumulative(X), form.s);
    double scale = As / (X * X);
    DensityEstimate est = sig.slab;
    est.method = "main_term";
    est.value *= scale;
    est.stderr_ *= scale;
    return est;
}

} // namespace wcm
