#pragma once

#include <complex>
#include <vector>

#include "wcm/expsums.hpp"
#include "wcm/forms.hpp"
#include "wcm/weights.hpp"

namespace wcm {

struct MajorArc {
    i64 a = 0, q = 1;
    double center = 0.0;
    double half_width = 0.0;
};

// Farey dissection of order P with arc half-width 1/(qQ), Q = X^2 / P.
struct ArcSchedule {
    double X = 0.0;
    double B_exp = 0.0;
    double K_exp = 0.0;
    i64 P = 1;
    double Q = 0.0;
    std::vector<MajorArc> arcs;
    double total_measure = 0.0;
};

ArcSchedule arc_schedule(double X, double B_exp, double K_exp);

struct RationalApprox {
    i64 a = 0, q = 1;
    double lambda = 0.0; // alpha - a/q
};

// Best continued-fraction convergent with denominator <= qbound; satisfies
// |lambda| <= 1/(q * qbound).
RationalApprox rational_approx(double alpha, i64 qbound);

struct WeylRow {
    double alpha = 0.0;
    i64 a = 0, q = 1;
    double lambda = 0.0;
    double S_abs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool budget_skipped = false;
};

struct WeylReport {
    double X = 0.0;
    int r = 0;
    std::vector<WeylRow> rows;
    double max_ratio = 0.0;
};

// |S(alpha)| against max|F| A(X)^s (1/X + 1/(q(1+X^2|l|)) + q(1+X^2|l|)/X^2)^(r/2).
WeylReport weyl_check(const QuadraticForm& form, const WeightModel& model, double X,
                      const std::vector<double>& alphas, const ExpSumOpts& opts = {});

// Seeded minor-arc samples stratified over the dyadic levels 2^j P.
std::vector<double> minor_arc_samples(double X, i64 P, int per_stratum, int max_total,
                                      u64 seed);

struct FactorizationCheck {
    double X = 0.0;
    double alpha = 0.0;
    i64 a = 0, q = 1;
    double lambda = 0.0;
    std::complex<double> S{0, 0};
    std::complex<double> S_qa{0, 0};
    std::complex<double> I{0, 0};
    double relative_error = 0.0;
    bool too_small = false; // |S_qa * I| under 1e-6 A(X)^s: no comparison made
};

// Splits S(alpha) into the residue factor S(q,a) and the archimedean factor
// I(lambda, X); s <= 3.
FactorizationCheck major_factorization_check(const QuadraticForm& form,
                                             const WeightModel& model, double alpha,
                                             double X, i64 qbound, int smooth_order,
                                             const ExpSumOpts& opts = {});

} // namespace wcm
