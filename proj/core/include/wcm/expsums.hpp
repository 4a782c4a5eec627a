#pragma once

#include <complex>
#include <string>
#include <vector>

#include "wcm/forms.hpp"
#include "wcm/weights.hpp"

namespace wcm {

struct ExpSumOpts {
    double s_alpha_cap = 1e10; // weighted-support tuples per S(alpha) call
    double st_cap = 1e9;       // residue tuples per direct S_t(q,a) call
    int threads = 0;           // 0 = resolve from WCL_THREADS / hardware
};

enum class SumRoute { Auto, Direct, Fast };

// Exact reduction of alpha * n mod 1 through the binary representation of
// alpha; the only float error is the final rounding to double.
double frac_mul(double alpha, i64 n);

// e(frac) = exp(2 pi i frac)
std::complex<double> unit_phase(double frac);

// S(alpha) = sum over 0 <= x <= X of prod a_{x_i} * e(alpha f(x)),
// enumerated over the weight support with compensated accumulation.
std::complex<double> S_alpha(const QuadraticForm& form, const WeightModel& model,
                             double X, double alpha, const ExpSumOpts& opts = {});

// Residue-class weight mass of f: out[w] = sum over h in (Z/q)^s with
// f(h) = w (mod q) of prod kappa(q, h_i).
std::vector<double> mod_q_weight_distribution(const QuadraticForm& form,
                                              const WeightModel& model, i64 q,
                                              const ExpSumOpts& opts = {});

// S_t(q, a) = sum_{h mod q} kappa(q, h) e((a/q)(f(h) - t)).
std::complex<double> S_t_qa(const QuadraticForm& form, const WeightModel& model,
                            i64 q, i64 a, i64 t, SumRoute route = SumRoute::Auto,
                            const ExpSumOpts& opts = {});

// B(q) = sum over a mod q coprime to q of S_t(q, a), with t = form.t.
std::complex<double> B_q(const QuadraticForm& form, const WeightModel& model,
                         i64 q, SumRoute route = SumRoute::Auto,
                         const ExpSumOpts& opts = {});

struct PerQRow {
    i64 q = 0;
    std::complex<double> B{0, 0};
    double im_residual = 0.0;
    std::string route; // "direct" | "gauss" | "crt" | "skipped"
    bool skipped = false;
};

struct PerPrimeRow {
    i64 p = 0;
    // partial[m] = sum_{k <= m} B(p^k), m = 0..depth (budget rows flagged)
    std::vector<std::complex<double>> partial;
    int computed_depth = 0;
};

struct SingularSeriesReport {
    i64 P = 0;
    int per_prime_depth = 0;
    std::vector<PerQRow> per_q;
    double S_P = 0.0;          // sum of Re B(q), q <= P (computed rows)
    double tail_estimate = 0.0; // C_fit * P^(-1/2)
    double C_fit = 0.0;
    int r = 0;                 // coupling rank used in the tail law
    bool r_warning = false;    // r < 5: tail law not backed by the rank bound
    std::vector<PerPrimeRow> per_prime;
    double euler_product = 0.0;
    std::vector<i64> skipped_q;
    double im_tolerance = 0.0;
};

SingularSeriesReport singular_series(const QuadraticForm& form,
                                     const WeightModel& model, i64 P,
                                     int per_prime_depth,
                                     const ExpSumOpts& opts = {});

} // namespace wcm
