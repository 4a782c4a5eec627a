#include <doctest.h>

#include <fstream>

#include "wcm/errors.hpp"
#include "wcm/weights.hpp"

using namespace wcm;

TEST_CASE("weight_at basics") {
    auto u = WeightModel::unit();
    auto p = WeightModel::primes();
    auto k2 = WeightModel::kfree(2);
    CHECK(p.weight_at(7) == 1.0);
    CHECK(p.weight_at(9) == 0.0);
    CHECK(k2.weight_at(12) == 0.0); // 4 | 12
    CHECK(k2.weight_at(10) == 1.0);
    CHECK(u.weight_at(0) == 0.0); // a_0 = 0 for every model
    CHECK(p.weight_at(0) == 0.0);
    CHECK(u.weight_at(1) == 1.0);
}

TEST_CASE("cumulative sums") {
    auto u = WeightModel::unit();
    auto p = WeightModel::primes();
    auto k2 = WeightModel::kfree(2);
    CHECK(p.cumulative(10) == 4.0); // 2, 3, 5, 7
    CHECK(u.cumulative(10) == 10.0);
    CHECK(k2.cumulative(10) == 7.0); // {1,2,3,5,6,7,10}
    CHECK(u.cumulative(0.5) == 0.0);
    CHECK(p.cumulative(2.9) == 1.0);
}

TEST_CASE("cumulative_progression") {
    auto u = WeightModel::unit();
    auto p = WeightModel::primes();
    auto k2 = WeightModel::kfree(2);
    CHECK(p.cumulative_progression(4, 2, 10) == 1.0); // only the prime 2
    CHECK(u.cumulative_progression(2, 0, 10) == 5.0);
    CHECK(k2.cumulative_progression(4, 0, 100) == 0.0);
    // progression masses refine the plain cumulative
    for (auto& m : {u, p, k2}) {
        double total = 0;
        for (i64 h = 0; h < 6; ++h) total += m.cumulative_progression(6, h, 400);
        CHECK(total == doctest::Approx(m.cumulative(400)).epsilon(1e-14));
    }
}

TEST_CASE("kappa exact values") {
    auto u = WeightModel::unit();
    auto p = WeightModel::primes();
    auto k2 = WeightModel::kfree(2);
    CHECK(u.kappa(5, 3) == Rational(BigInt(1), BigInt(5)));
    CHECK(p.kappa(6, 5) == Rational(BigInt(1), BigInt(2)));
    CHECK(p.kappa(6, 3).is_zero());
    CHECK(k2.kappa(4, 0).is_zero());
    CHECK(k2.kappa(4, 2) == Rational(BigInt(1), BigInt(3)));
    CHECK(k2.kappa(2, 1) == Rational(BigInt(2), BigInt(3)));
    CHECK(u.kappa(1, 0) == Rational(1));
    CHECK(p.kappa(1, 0) == Rational(1));
    CHECK(k2.kappa(1, 0) == Rational(1));
}

TEST_CASE("kappa empirical oracle matches the exact table") {
    auto p = WeightModel::primes();
    auto k2 = WeightModel::kfree(2);
    const double X = 1e6;
    CHECK(kappa_empirical(p, 6, 5, X) ==
          doctest::Approx(p.kappa(6, 5).to_double()).epsilon(1e-2));
    CHECK(kappa_empirical(k2, 4, 2, X) == doctest::Approx(1.0 / 3).epsilon(1e-2));
    CHECK(kappa_empirical(k2, 2, 1, X) == doctest::Approx(2.0 / 3).epsilon(1e-2));
}

TEST_CASE("smooth approximants") {
    auto u = WeightModel::unit();
    CHECK(u.smooth(5).Psi(100.0) == 100.0);
    CHECK(u.smooth(5).psi(3.0) == 1.0);

    auto k2 = WeightModel::kfree(2);
    auto s2 = k2.smooth(5);
    CHECK(s2.Psi(1e6) / 1e6 == doctest::Approx(0.607927).epsilon(1e-5)); // 6/pi^2

    auto p = WeightModel::primes();
    auto s1 = p.smooth(1);
    double X = std::exp(10.0);
    CHECK(s1.Psi(X) == doctest::Approx(X / 10.0).epsilon(1e-12));
    // psi stays positive above its threshold
    for (int m : {1, 2, 3, 5}) {
        auto sm = p.smooth(m);
        for (double x = sm.threshold * 1.0000001; x < 1e6; x *= 1.7)
            CHECK(sm.psi(x) > 0.0);
    }
    // Psi tracks A on a grid: |Psi - A| / (A / log^m) bounded
    auto s3 = p.smooth(3);
    for (double X2 : {1e4, 1e5, 1e6}) {
        double A = p.cumulative(X2);
        double err = std::abs(s3.Psi(X2) - A);
        double scale = A / std::pow(std::log(X2), 3);
        CHECK(err / scale < 50.0);
    }
}

TEST_CASE("custom model round trip") {
    const char* text = R"({
      "a": [1, 0, 0.5, 0, 1],
      "kappa": {"1": {"0": "1"}, "2": {"0": "1/4", "1": "3/4"}},
      "psi": {"coeff": 0.5, "xexp": 1.0, "logexp": 0.0}
    })";
    auto m = WeightModel::custom_from_json_text(text);
    CHECK_FALSE(m.is_indicator());
    CHECK(m.weight_at(3) == 0.5);
    CHECK(m.weight_at(6) == 0.0);
    CHECK(m.cumulative(5) == doctest::Approx(2.5));
    CHECK(m.kappa(2, 1) == Rational(BigInt(3), BigInt(4)));
    CHECK_THROWS_AS(m.kappa(3, 1), input_error);
    CHECK(m.smooth(2).Psi(100.0) == doctest::Approx(50.0));
    CHECK(m.kappa_table_limit().value() == 2);

    auto bare = WeightModel::custom_from_json_text(R"({"a": [1, 1]})");
    CHECK_THROWS_AS(bare.smooth(2), input_error);
    CHECK_THROWS_AS(bare.kappa(2, 0), input_error);
    CHECK(bare.is_indicator());
}

TEST_CASE("parse_spec") {
    CHECK(WeightModel::parse_spec("unit").kind() == WeightKind::Unit);
    CHECK(WeightModel::parse_spec("primes").kind() == WeightKind::Primes);
    CHECK(WeightModel::parse_spec("kfree:3").kfree_k() == 3);
    CHECK_THROWS_AS(WeightModel::parse_spec("nope"), input_error);
}

TEST_CASE("audit_kappa exact identities") {
    for (auto model : {WeightModel::unit(), WeightModel::primes(), WeightModel::kfree(2),
                       WeightModel::kfree(3)}) {
        auto rep = audit_kappa(model, 50);
        CHECK(rep.normalization_ok);
        CHECK(rep.condition_c_ok);
        CHECK(rep.refinement_ok);
        CHECK(rep.failures.empty());
    }
}

TEST_CASE("audit_kappa near-uniformity constants") {
    auto ru = audit_kappa(WeightModel::unit(), 50);
    CHECK(ru.fitted_c == 0);
    CHECK(ru.k_constant[0] == doctest::Approx(1.0));
    auto rp = audit_kappa(WeightModel::primes(), 50);
    CHECK(rp.fitted_c >= 0);
    CHECK(rp.k_constant[0] >= 30.0 / 8.0 - 1e-12); // q/phi(q) peaks at q = 30
    auto rk = audit_kappa(WeightModel::kfree(2), 50);
    CHECK(rk.fitted_c >= 0);
    CHECK(rk.fitted_c <= 1);
}

TEST_CASE("audit_distribution") {
    auto u = WeightModel::unit();
    auto du = audit_distribution(u, {3, 4}, {100, 1000, 10000});
    for (double r : du.l2_ratio) CHECK(r == doctest::Approx(1.0).epsilon(1e-9));

    auto p = WeightModel::primes();
    auto dp = audit_distribution(p, {3}, {1e4, 1e5, 1e6});
    CHECK(dp.rows[0].discrepancy.back() < dp.rows[0].discrepancy.front());
    CHECK(dp.rows[0].decreasing);

    auto k2 = WeightModel::kfree(2);
    auto dk = audit_distribution(k2, {4}, {1e4, 1e5, 1e6});
    // |A(4,2;X)/A(X) - 1/3| small at X = 1e6
    double disc = std::abs(kappa_empirical(k2, 4, 2, 1e6) - 1.0 / 3);
    CHECK(disc < 1e-2);
    CHECK(dk.rows[0].discrepancy.back() < 1e-2);

    CHECK_THROWS_AS(audit_distribution(u, {2}, {10, 5, 20}), input_error);
}
