#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcm/expsums.hpp"
#include "wcm/forms.hpp"
#include "wcm/weights.hpp"

namespace wcm {

struct LocalDensityOpts {
    double enumeration_cap = 1e9; // residue tuples per M(p^m) row
    double stabilization_tol = 1e-9;
    ExpSumOpts expsum;
};

struct LocalDensityRow {
    int m = 0;
    double M = 0.0;        // weighted solution count M(p^m)
    double pmM = 0.0;      // p^m * M(p^m)
    double B_partial = 0.0; // Re sum_{k<=m} B(p^k)
    double discrepancy = 0.0;
    bool budget_skipped = false;
    std::string method; // "enum" | "lift"
};

struct LocalDensitySequence {
    i64 p = 0;
    std::vector<LocalDensityRow> rows; // m = 1..mmax
    bool stabilized = false;
    int stabilization_depth = 0;
};

// M(p^m): kappa-weighted count of solutions of f = t mod p^m.
double M_pm(const QuadraticForm& form, const WeightModel& model, i64 p, int m,
            const LocalDensityOpts& opts = {});

// Density rows plus the cross-check against partial sums of B(p^k).
LocalDensitySequence chi_p(const QuadraticForm& form, const WeightModel& model,
                           i64 p, int mmax, const LocalDensityOpts& opts = {});

struct ConditionBResult {
    bool found = false;
    std::vector<BigInt> witness;
    BigInt modulus = 0;
    i64 attempts = 0;
    std::vector<i64> bad_primes; // primes dividing 2 det F
};

// Randomized search for x mod (2 det F)^(2k-1) with f(x) = t and no
// coordinate divisible by p^k for any bad prime p. A miss is not a disproof.
ConditionBResult search_condition_B(const QuadraticForm& form, int k, i64 budget,
                                    u64 seed = 1);

} // namespace wcm
