#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "wcm/forms.hpp"
#include "wcm/weights.hpp"

namespace wcm {

// Cube B = xstar + [-eta, eta]^s around a positive point on f = t0, nested
// between the comparison cubes C1 = x0 +- eta/2 and C2 = x0 +- 2 eta.
struct BoxSpec {
    std::vector<double> x0;
    std::vector<double> xstar;
    double eta = 0.0;
    double t0 = 0.0;
    std::vector<double> grad; // gradient of f at xstar
    std::vector<double> lo, hi; // bounds of B

    double volume() const;
};

struct DensityEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::string method; // "slab" | "coarea"
    i64 samples = 0;
    u64 seed = 0;
};

struct PositiveZeroOpts {
    u64 seed = 1;
    double margin = 0.05;
    int starts = 400;
    double lo = 0.1;
    double hi = 2.0;
};

// A positive real zero of the form, found by exact one-coordinate solves
// from random positive starts. Throws infeasibility_error when none exists
// within the start budget (definite forms).
std::vector<double> find_positive_zero(const QuadraticForm& form,
                                       const PositiveZeroOpts& opts = {});

// Builds the box for target level t0 = t / X^2 by adjusting one coordinate
// of x0; requires the shift to stay within eta/2.
BoxSpec build_box(const QuadraticForm& form, i64 t, double X, double eta,
                  std::span<const double> x0);

struct SigmaInfinityResult {
    DensityEstimate slab;   // Richardson-extrapolated slab estimator
    DensityEstimate coarea; // exact one-coordinate section integral
    double epsilon = 0.0;   // slab half-width used
    bool consistent = false; // within 3 combined standard errors
};

struct SigmaOpts {
    int smooth_order = 1;
    int threads = 0;
};

// Weighted real density sigma_infinity = V(0): density of the pushforward
// of the A-normalized measure on B under f at the level t0.
SigmaInfinityResult sigma_infinity(const QuadraticForm& form, const WeightModel& model,
                                   const BoxSpec& box, double X, i64 N, u64 seed,
                                   const SigmaOpts& opts = {});

// Oscillatory integral over [0, X]^s of psi(u) e(lambda f(u)), s <= 3.
std::complex<double> singular_integral_I(const QuadraticForm& form,
                                         const WeightModel& model, double X,
                                         double lambda, int smooth_order = 2,
                                         int max_panels_per_dim = 4096);

// Main-term surrogate sigma_infinity * A(X)^s / X^2 with propagated stderr.
DensityEstimate main_term_integral(const QuadraticForm& form, const WeightModel& model,
                                   const BoxSpec& box, double X, i64 N, u64 seed,
                                   const SigmaOpts& opts = {});

// Deterministic low-discrepancy stream: Halton points with a seeded rotation.
class HaltonStream {
public:
    HaltonStream(int dim, u64 seed);
    // point(index) fills out[0..dim) with coordinates in [0, 1)
    void point(u64 index, double* out) const;

private:
    std::vector<i64> bases_;
    std::vector<double> rot_;
};

} // namespace wcm
