#include "wcm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>

#include "wcm/errors.hpp"

namespace wcm {

struct WeightModel::CustomData {
    std::vector<double> a; // a[x-1] is the weight of x
    bool indicator = false;
    std::map<i64, std::vector<Rational>> kappa; // q -> values by h
    bool has_psi = false;
    double psi_coeff = 1.0, psi_xexp = 1.0, psi_logexp = 0.0;
};

struct WeightModel::SieveCache {
    std::mutex mu;
    i64 limit = -1;
    std::vector<uint8_t> indicator;   // built-ins
    std::vector<double> prefix;       // A(x) for x = 0..limit
    std::vector<double> prefix_sq;    // sum of a^2
};

WeightModel WeightModel::unit() {
    WeightModel m(WeightKind::Unit, 0);
    m.cache_ = std::make_shared<SieveCache>();
    return m;
}

WeightModel WeightModel::primes() {
    WeightModel m(WeightKind::Primes, 0);
    m.cache_ = std::make_shared<SieveCache>();
    return m;
}

WeightModel WeightModel::kfree(int k) {
    if (k < 2) throw input_error("kfree model needs k >= 2");
    WeightModel m(WeightKind::KFree, k);
    m.cache_ = std::make_shared<SieveCache>();
    return m;
}

WeightModel WeightModel::custom_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw input_error(std::string("custom weights JSON parse error: ") + e.what());
    }
    WeightModel m(WeightKind::Custom, 0);
    m.cache_ = std::make_shared<SieveCache>();
    auto data = std::make_shared<CustomData>();
    if (!j.contains("a") || !j.at("a").is_array())
        throw input_error("custom weights need an \"a\" array (weights from x = 1)");
    data->indicator = true;
    for (auto& v : j.at("a")) {
        double w = v.get<double>();
        if (w < 0) throw input_error("custom weights must be nonnegative");
        if (w != 0.0 && w != 1.0) data->indicator = false;
        data->a.push_back(w);
    }
    if (j.contains("kappa")) {
        for (auto& [qs, row] : j.at("kappa").items()) {
            i64 q = std::stoll(qs);
            if (q < 1) throw input_error("custom kappa: modulus must be >= 1");
            std::vector<Rational> vals(q, Rational(0));
            for (auto& [hs, rv] : row.items()) {
                i64 h = std::stoll(hs);
                if (h < 0 || h >= q) throw input_error("custom kappa: residue out of range");
                vals[h] = Rational::parse(rv.get<std::string>());
            }
            data->kappa[q] = std::move(vals);
        }
    }
    if (j.contains("psi")) {
        auto& p = j.at("psi");
        data->has_psi = true;
        data->psi_coeff = p.value("coeff", 1.0);
        data->psi_xexp = p.value("xexp", 1.0);
        data->psi_logexp = p.value("logexp", 0.0);
    }
    m.custom_ = std::move(data);
    return m;
}

WeightModel WeightModel::custom_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open custom weights file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return custom_from_json_text(ss.str());
}

WeightModel WeightModel::parse_spec(const std::string& spec) {
    if (spec == "unit") return unit();
    if (spec == "primes") return primes();
    if (spec.rfind("kfree:", 0) == 0) return kfree(std::stoi(spec.substr(6)));
    if (spec == "kfree") return kfree(2);
    if (spec.rfind("custom:", 0) == 0) return custom_from_file(spec.substr(7));
    throw input_error("unknown weight model: " + spec +
                      " (expected unit|primes|kfree:K|custom:PATH)");
}

std::string WeightModel::name() const {
    switch (kind_) {
        case WeightKind::Unit: return "unit";
        case WeightKind::Primes: return "primes";
        case WeightKind::KFree: return "kfree:" + std::to_string(k_);
        case WeightKind::Custom: return "custom";
    }
    return "?";
}

bool WeightModel::is_indicator() const {
    if (kind_ == WeightKind::Custom) return custom_->indicator;
    return true;
}

bool WeightModel::has_exact_kappa() const {
    return kind_ != WeightKind::Custom || !custom_->kappa.empty();
}

std::optional<i64> WeightModel::kappa_table_limit() const {
    if (kind_ != WeightKind::Custom) return std::nullopt;
    if (custom_->kappa.empty()) return 0;
    return custom_->kappa.rbegin()->first;
}

void WeightModel::ensure_sieve(i64 limit) const {
    if (kind_ == WeightKind::Custom) {
        auto& c = *cache_;
        std::lock_guard<std::mutex> lock(c.mu);
        if (c.limit >= 0) return;
        i64 n = static_cast<i64>(custom_->a.size());
        c.prefix.assign(n + 1, 0.0);
        c.prefix_sq.assign(n + 1, 0.0);
        for (i64 x = 1; x <= n; ++x) {
            double w = custom_->a[x - 1];
            c.prefix[x] = c.prefix[x - 1] + w;
            c.prefix_sq[x] = c.prefix_sq[x - 1] + w * w;
        }
        c.limit = n;
        return;
    }
    auto& c = *cache_;
    std::lock_guard<std::mutex> lock(c.mu);
    if (c.limit >= limit) return;
    i64 target = std::max<i64>(limit, std::max<i64>(1024, c.limit * 2));
    switch (kind_) {
        case WeightKind::Unit:
            c.indicator.assign(target + 1, 1);
            c.indicator[0] = 0;
            break;
        case WeightKind::Primes:
            c.indicator = prime_sieve(target);
            break;
        case WeightKind::KFree:
            c.indicator = kfree_sieve(target, k_);
            break;
        default:
            break;
    }
    c.prefix.assign(target + 1, 0.0);
    for (i64 x = 1; x <= target; ++x)
        c.prefix[x] = c.prefix[x - 1] + (c.indicator[x] ? 1.0 : 0.0);
    c.limit = target;
}

double WeightModel::weight_at(i64 x) const {
    if (x <= 0) return 0.0;
    if (kind_ == WeightKind::Custom) {
        if (x > static_cast<i64>(custom_->a.size())) return 0.0;
        return custom_->a[x - 1];
    }
    ensure_sieve(x);
    return cache_->indicator[x] ? 1.0 : 0.0;
}

std::vector<i64> WeightModel::support(i64 X) const {
    std::vector<i64> out;
    if (X < 1) return out;
    if (kind_ == WeightKind::Custom) {
        i64 n = std::min<i64>(X, custom_->a.size());
        for (i64 x = 1; x <= n; ++x)
            if (custom_->a[x - 1] != 0.0) out.push_back(x);
        return out;
    }
    ensure_sieve(X);
    for (i64 x = 1; x <= X; ++x)
        if (cache_->indicator[x]) out.push_back(x);
    return out;
}

double WeightModel::cumulative(double X) const {
    if (X < 1) return 0.0;
    i64 xf = static_cast<i64>(std::floor(X));
    if (kind_ == WeightKind::Custom) {
        ensure_sieve(0);
        i64 n = std::min<i64>(xf, cache_->limit);
        return cache_->prefix[n];
    }
    ensure_sieve(xf);
    return cache_->prefix[xf];
}

double WeightModel::square_cumulative(double X) const {
    if (X < 1) return 0.0;
    i64 xf = static_cast<i64>(std::floor(X));
    if (kind_ == WeightKind::Custom) {
        ensure_sieve(0);
        i64 n = std::min<i64>(xf, cache_->limit);
        return cache_->prefix_sq[n];
    }
    // indicator weights: a^2 = a
    return cumulative(X);
}

double WeightModel::cumulative_progression(i64 q, i64 h, double X) const {
    if (q < 1) throw input_error("progression modulus must be >= 1");
    if (h < 0 || h >= q) throw input_error("progression residue out of range");
    if (X < 1) return 0.0;
    i64 xf = static_cast<i64>(std::floor(X));
    double acc = 0.0;
    i64 start = h == 0 ? q : h;
    if (kind_ == WeightKind::Custom) {
        for (i64 x = start; x <= xf; x += q) acc += weight_at(x);
        return acc;
    }
    ensure_sieve(xf);
    for (i64 x = start; x <= xf; x += q)
        if (cache_->indicator[x]) acc += 1.0;
    return acc;
}

Rational WeightModel::kappa(i64 q, i64 h) const {
    if (q < 1) throw input_error("kappa: modulus must be >= 1");
    if (h < 0 || h >= q) throw input_error("kappa: residue out of range");
    switch (kind_) {
        case WeightKind::Unit:
            return Rational(BigInt(1), BigInt(q));
        case WeightKind::Primes: {
            if (q == 1) return Rational(1);
            if (gcd_ll(h, q) != 1) return Rational(0);
            return Rational(BigInt(1), BigInt(euler_phi(q)));
        }
        case WeightKind::KFree: {
            if (q == 1) return Rational(1);
            auto fac = factorize(q);
            // v_p(h) >= k for a prime of q means no k-free x lies in the class
            for (auto [p, e] : fac) {
                if (e < k_) continue;
                i64 pk = 1;
                for (int i = 0; i < k_; ++i) pk *= p;
                if (h % pk == 0) return Rational(0);
            }
            Rational r(BigInt(1), BigInt(q));
            for (auto [p, e] : fac) {
                BigInt pk = 1;
                for (int i = 0; i < k_; ++i) pk *= p;
                r *= Rational(pk, pk - 1); // (1 - p^-k)^-1
                // factor (1 - p^(e-k)) when h is 0 mod p^e
                i64 pe = 1;
                for (int i = 0; i < e; ++i) pe *= p;
                if (h % pe == 0) {
                    BigInt pek = 1; // p^(k-e), e < k here (e >= k handled above)
                    for (int i = 0; i < k_ - e; ++i) pek *= p;
                    r *= Rational(pek - 1, pek);
                }
            }
            return r;
        }
        case WeightKind::Custom: {
            auto it = custom_->kappa.find(q);
            if (it == custom_->kappa.end())
                throw input_error("custom model has no kappa table for q = " +
                                  std::to_string(q));
            return it->second[h];
        }
    }
    throw input_error("kappa: unknown model kind");
}

SmoothApproximant WeightModel::smooth(int order) const {
    if (order < 1) throw input_error("smooth order must be >= 1");
    SmoothApproximant s;
    s.order = order;
    switch (kind_) {
        case WeightKind::Unit:
            s.Psi = [](double X) { return X; };
            s.psi = [](double) { return 1.0; };
            s.threshold = 0.0;
            return s;
        case WeightKind::Primes: {
            int m = order;
            double mfact = 1.0;
            for (int i = 2; i <= m; ++i) mfact *= i;
            // psi > 0 iff (log x)^m > m!
            s.threshold = std::exp(std::pow(mfact, 1.0 / m)) * (1.0 + 1e-12);
            s.Psi = [m](double X) {
                if (X <= 1.0) return 0.0;
                double L = std::log(X);
                double acc = 0.0, kfact = 1.0;
                for (int k = 0; k < m; ++k) {
                    if (k > 0) kfact *= k;
                    acc += kfact / std::pow(L, k + 1);
                }
                return X * acc;
            };
            s.psi = [m, mfact, thr = s.threshold](double x) {
                if (x < thr) return 0.0;
                double L = std::log(x);
                return 1.0 / L - mfact / std::pow(L, m + 1);
            };
            return s;
        }
        case WeightKind::KFree: {
            double z = std::riemann_zeta(static_cast<double>(k_));
            s.Psi = [z](double X) { return X / z; };
            s.psi = [z](double) { return 1.0 / z; };
            s.threshold = 0.0;
            return s;
        }
        case WeightKind::Custom: {
            if (!custom_->has_psi)
                throw input_error("custom model without psi specification");
            double c = custom_->psi_coeff, a = custom_->psi_xexp, b = custom_->psi_logexp;
            // Psi = c x^a log(x)^b
            s.threshold = std::max(1.0 + 1e-9, a != 0.0 ? std::exp(-b / a) : 1.0);
            s.Psi = [c, a, b](double X) {
                if (X <= 1.0) return 0.0;
                return c * std::pow(X, a) * std::pow(std::log(X), b);
            };
            s.psi = [c, a, b, thr = s.threshold](double x) {
                if (x < thr) return 0.0;
                double L = std::log(x);
                return c * std::pow(x, a - 1.0) * std::pow(L, b - 1.0) * (a * L + b);
            };
            return s;
        }
    }
    throw input_error("smooth: unknown model kind");
}

double kappa_empirical(const WeightModel& model, i64 q, i64 h, double X) {
    double A = model.cumulative(X);
    if (A <= 0) return 0.0;
    return model.cumulative_progression(q, h, X) / A;
}

// ---- audits ----------------------------------------------------------

KappaAuditReport audit_kappa(const WeightModel& model, i64 qmax) {
    if (qmax < 2) throw input_error("audit_kappa needs qmax >= 2");
    if (!model.has_exact_kappa())
        throw input_error("audit_kappa needs an exact kappa table");
    KappaAuditReport rep;
    rep.qmax = qmax;
    rep.exact = true;

    // cache all kappa rows once
    std::vector<std::vector<Rational>> kap(qmax + 1);
    for (i64 q = 1; q <= qmax; ++q) {
        kap[q].reserve(q);
        for (i64 h = 0; h < q; ++h) kap[q].push_back(model.kappa(q, h));
    }

    rep.normalization_ok = true;
    for (i64 q = 1; q <= qmax; ++q) {
        Rational sum(0);
        for (i64 h = 0; h < q; ++h) sum += kap[q][h];
        if (sum != Rational(1)) {
            rep.normalization_ok = false;
            rep.failures.push_back({"normalization", q, 0, 0, 0,
                                    "sum_h kappa = " + sum.str()});
        }
    }

    rep.condition_c_ok = true;
    rep.refinement_ok = true;
    for (i64 q = 2; q <= qmax; ++q) {
        for (i64 qp = 2; q * qp <= qmax; ++qp) {
            i64 qq = q * qp;
            if (gcd_ll(q, qp) == 1) {
                for (i64 h = 0; h < q && rep.condition_c_ok; ++h) {
                    for (i64 hp = 0; hp < qp; ++hp) {
                        Rational lhs = kap[qq][mod_floor(q * hp + qp * h, qq)];
                        Rational rhs = kap[q][mod_floor(qp * h, q)] *
                                       kap[qp][mod_floor(q * hp, qp)];
                        if (lhs != rhs) {
                            rep.condition_c_ok = false;
                            rep.failures.push_back({"conditionC", q, qp, h, hp,
                                                    lhs.str() + " != " + rhs.str()});
                            break;
                        }
                    }
                }
            }
            for (i64 h = 0; h < q && rep.refinement_ok; ++h) {
                Rational sum(0);
                for (i64 b = h; b < qq; b += q) sum += kap[qq][b];
                if (sum != kap[q][h]) {
                    rep.refinement_ok = false;
                    rep.failures.push_back({"refinement", q, qp, h, 0,
                                            sum.str() + " != " + kap[q][h].str()});
                }
            }
        }
    }

    // near-uniformity constants: C_c = max_q q * max_h kappa / (log q)^c
    for (int c = 0; c < 3; ++c) {
        double best = 0.0;
        i64 arg = 0;
        for (i64 q = 2; q <= qmax; ++q) {
            double mx = 0.0;
            for (i64 h = 0; h < q; ++h) mx = std::max(mx, kap[q][h].to_double());
            double v = q * mx / std::pow(std::log(static_cast<double>(q)), c);
            if (v > best) {
                best = v;
                arg = q;
            }
        }
        rep.k_constant[c] = best;
        rep.k_argmax[c] = arg;
    }
    rep.fitted_c = -1;
    for (int c = 0; c < 3; ++c) {
        if (rep.k_argmax[c] <= (3 * qmax) / 4) {
            rep.fitted_c = c;
            break;
        }
    }
    return rep;
}

namespace {

// least-squares slope of y against x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double d = n * sxx - sx * sx;
    if (d == 0) return 0.0;
    return (n * sxy - sx * sy) / d;
}

} // namespace

DistributionAuditReport audit_distribution(const WeightModel& model,
                                           const std::vector<i64>& q_list,
                                           const std::vector<double>& X_grid) {
    if (X_grid.size() < 3) throw input_error("audit_distribution needs |X_grid| >= 3");
    for (size_t i = 1; i < X_grid.size(); ++i)
        if (X_grid[i] <= X_grid[i - 1])
            throw input_error("audit_distribution X_grid must be increasing");

    DistributionAuditReport rep;
    rep.X_grid = X_grid;

    std::vector<double> loglogX;
    for (double X : X_grid) loglogX.push_back(std::log(std::log(X)));

    std::vector<double> logratio;
    for (double X : X_grid) {
        double A = model.cumulative(X);
        double ratio = A > 0 ? model.square_cumulative(X) * X / (A * A) : 0.0;
        rep.l2_ratio.push_back(ratio);
        logratio.push_back(ratio > 0 ? std::log(ratio) : 0.0);
    }
    rep.l2_fitted_c = fit_slope(loglogX, logratio);

    bool exact_kappa = model.has_exact_kappa();
    for (i64 q : q_list) {
        DistributionRow row;
        row.q = q;
        for (double X : X_grid) {
            double A = model.cumulative(X);
            double worst = 0.0;
            for (i64 h = 0; h < q; ++h) {
                double kap = exact_kappa ? model.kappa(q, h).to_double()
                                         : kappa_empirical(model, q, h, X_grid.back());
                double d = std::abs(model.cumulative_progression(q, h, X) - kap * A);
                worst = std::max(worst, A > 0 ? d / A : 0.0);
            }
            row.discrepancy.push_back(worst);
        }
        std::vector<double> logd;
        for (double d : row.discrepancy) logd.push_back(std::log(std::max(d, 1e-300)));
        row.fitted_decay = -fit_slope(loglogX, logd);
        row.decreasing = row.discrepancy.back() < row.discrepancy.front();
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace wcm
