#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcm/expsums.hpp"
#include "wcm/forms.hpp"
#include "wcm/realdens.hpp"
#include "wcm/weights.hpp"

namespace wcm {

struct CountOpts {
    double cap = 1e10; // prefix tuples (support size to the power s-1)
    int threads = 0;
};

struct CountRegion {
    // full cube [0, X]^s by default; a box restricts coordinate i to
    // [X * lo[i], X * hi[i]]
    bool is_box = false;
    std::vector<double> lo, hi;

    static CountRegion full_cube() { return {}; }
    static CountRegion from_box(const BoxSpec& box) {
        return {true, box.lo, box.hi};
    }
};

struct CountResult {
    double value = 0.0;     // weighted count
    BigInt exact = 0;       // populated for indicator weights
    bool is_exact = false;
    double prefix_tuples = 0.0;
};

// R_{f,t}: enumerate the first s-1 coordinates over the weight support and
// solve the remaining integer quadratic exactly.
CountResult brute_count(const QuadraticForm& form, const WeightModel& model,
                        double X, const CountRegion& region = {},
                        const CountOpts& opts = {});

struct PredictionReport {
    double X = 0.0;
    i64 t = 0;
    double count = 0.0;
    bool count_exact = false;
    double main_term = 0.0;
    double main_stderr = 0.0;
    double ratio = 0.0;
    double S_P = 0.0;
    double tail_estimate = 0.0;
    double sigma_inf = 0.0;
    double sigma_stderr = 0.0;
    double sigma_coarea = 0.0;
    double A_X = 0.0;
    int smooth_order = 0;
    std::vector<double> box_center;
    double eta = 0.0;
    bool l1_satisfied = true;
    bool main_term_indistinguishable = false;
    std::vector<std::string> warnings;
};

struct PredictOpts {
    i64 P = 15;            // singular-series truncation
    int prime_depth = 4;
    double eta = 0.0;      // 0: default 0.1 * min coordinate of the center
    i64 samples = 200000;
    u64 seed = 1;
    int smooth_order = 5;  // clamped down when psi would vanish on the box
    bool adaptive_t = false; // per-X target f(round(X * center)) snapped to support
    std::vector<double> center; // empty: find a positive zero of f
    CountOpts count;
    ExpSumOpts expsum;
    int threads = 0;
};

std::vector<PredictionReport> predict_compare(const QuadraticForm& form,
                                              const WeightModel& model,
                                              const std::vector<double>& X_grid,
                                              const PredictOpts& opts = {});

} // namespace wcm
