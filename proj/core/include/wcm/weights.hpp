#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wcm/numtheory.hpp"
#include "wcm/rational.hpp"

namespace wcm {

enum class WeightKind { Unit, Primes, KFree, Custom };

// Smooth surrogate for the cumulative weight sum: Psi approximates A(X),
// psi = Psi'. psi is taken to be 0 below `threshold` (and callers must keep
// their domains above it when positivity matters).
struct SmoothApproximant {
    std::function<double(double)> Psi;
    std::function<double(double)> psi;
    int order = 0;
    double threshold = 0.0;
};

// A nonnegative weight sequence a_1, a_2, ... (a_0 = 0 by convention) with
// its residue-class mass coefficients kappa(q, h) and smooth approximant.
class WeightModel {
public:
    static WeightModel unit();
    static WeightModel primes();
    static WeightModel kfree(int k);
    static WeightModel custom_from_file(const std::string& path);
    static WeightModel custom_from_json_text(const std::string& text);
    // "unit" | "primes" | "kfree:K" | "custom:PATH"
    static WeightModel parse_spec(const std::string& spec);

    WeightKind kind() const { return kind_; }
    int kfree_k() const { return k_; }
    std::string name() const;
    bool is_indicator() const;
    bool has_exact_kappa() const;

    double weight_at(i64 x) const;
    // Support of the weights in [0, X]: ascending x with a_x != 0.
    std::vector<i64> support(i64 X) const;

    double cumulative(double X) const;                         // A(X)
    double cumulative_progression(i64 q, i64 h, double X) const; // A(q,h;X)
    double square_cumulative(double X) const;                  // sum a_x^2

    Rational kappa(i64 q, i64 h) const;
    SmoothApproximant smooth(int order) const;
    int default_smooth_order() const { return 5; }

    // Largest modulus the custom kappa table covers (built-ins: unbounded).
    std::optional<i64> kappa_table_limit() const;

private:
    WeightModel(WeightKind kind, int k) : kind_(kind), k_(k) {}

    void ensure_sieve(i64 limit) const;

    WeightKind kind_;
    int k_ = 0;

    struct CustomData;
    std::shared_ptr<CustomData> custom_;

    struct SieveCache;
    std::shared_ptr<SieveCache> cache_;
};

// Empirical residue-mass ratio A(q,h;X)/A(X); oracle for kappa.
double kappa_empirical(const WeightModel& model, i64 q, i64 h, double X);

// ---- Condition audits ------------------------------------------------

struct KappaFailure {
    std::string identity; // "normalization" | "conditionC" | "refinement"
    i64 q = 0, qp = 0, h = 0, hp = 0;
    std::string detail;
};

struct KappaAuditReport {
    i64 qmax = 0;
    bool normalization_ok = false;
    bool condition_c_ok = false;
    bool refinement_ok = false;
    std::vector<KappaFailure> failures;
    // C_c = max over q <= qmax of q * max_h kappa(q,h) / (log q)^c.
    double k_constant[3] = {0, 0, 0};
    i64 k_argmax[3] = {0, 0, 0};
    // Smallest c whose running max has stopped growing over the top quarter
    // of the audited range; -1 when none of {0,1,2} plateaus.
    int fitted_c = -1;
    bool exact = true; // false when kappa values are empirical (custom)
};

// Exhaustive exact-rational audit of normalization, multiplicativity over
// coprime moduli, refinement consistency, and the near-uniformity constants.
KappaAuditReport audit_kappa(const WeightModel& model, i64 qmax);

struct DistributionRow {
    i64 q = 0;
    std::vector<double> discrepancy; // max_h |A(q,h;X) - kappa(q,h) A(X)| / A(X)
    double fitted_decay = 0.0;       // exponent in (log X)^-fit
    bool decreasing = false;
};

struct DistributionAuditReport {
    std::vector<double> X_grid;
    std::vector<double> l2_ratio; // (sum a_x^2) * X / A(X)^2
    double l2_fitted_c = 0.0;     // log-power fit of the ratio
    std::vector<DistributionRow> rows;
};

DistributionAuditReport audit_distribution(const WeightModel& model,
                                           const std::vector<i64>& q_list,
                                           const std::vector<double>& X_grid);

} // namespace wcm
