#include <doctest.h>

#include <cmath>
#include <random>

#include "wcm/arcs.hpp"
#include "wcm/errors.hpp"

using namespace wcm;

TEST_CASE("arc_schedule farey enumeration") {
    // P = floor(log(X)^B): pick B so P = 2 at X = 100
    double X = 100.0;
    double B = std::log(2.0) / std::log(std::log(X));
    auto sched = arc_schedule(X, B, 1.0);
    CHECK(sched.P == 2);
    REQUIRE(sched.arcs.size() == 2); // (1,1) and (1,2)
    CHECK(sched.arcs[0].q == 1);
    CHECK(sched.arcs[1].q == 2);
    CHECK(sched.total_measure <= 2.0 * sched.P * sched.P / sched.Q + 1e-15);

    // brute double loop for a larger order
    auto big = arc_schedule(1e6, 1.2, 1.0);
    i64 count = 0;
    for (i64 q = 1; q <= big.P; ++q)
        for (i64 a = 1; a <= q; ++a)
            if (gcd_ll(a, q) == 1) ++count;
    CHECK(static_cast<i64>(big.arcs.size()) == count);
    for (const auto& arc : big.arcs) {
        CHECK(arc.a >= 1);
        CHECK(arc.a <= arc.q);
        CHECK(gcd_ll(arc.a, arc.q) == 1);
        CHECK(arc.half_width == doctest::Approx(1.0 / (arc.q * big.Q)));
    }
}

TEST_CASE("arc_schedule degenerate orders") {
    // B tiny: P = 1, single arc at q = 1
    auto sched = arc_schedule(50.0, 0.0, 1.0);
    CHECK(sched.P == 1);
    REQUIRE(sched.arcs.size() == 1);
    CHECK(sched.arcs[0].q == 1);
    // P >= Q refused
    CHECK_THROWS_AS(arc_schedule(3.0, 12.0, 1.0), input_error);
}

TEST_CASE("rational_approx closed cases") {
    auto r1 = rational_approx(2.0 / 3.0, 10);
    CHECK(r1.a == 2);
    CHECK(r1.q == 3);
    CHECK(r1.lambda == 0.0);

    auto r2 = rational_approx(0.5 + 1e-6, 2);
    CHECK(r2.a == 1);
    CHECK(r2.q == 2);
    CHECK(r2.lambda == doctest::Approx(1e-6).epsilon(1e-6));

    auto r3 = rational_approx(M_PI - 3.0, 200);
    CHECK(r3.a == 16);
    CHECK(r3.q == 113);

    auto r4 = rational_approx(0.0, 7);
    CHECK(r4.a == 0);
    CHECK(r4.q == 1);
}

TEST_CASE("rational_approx dirichlet property") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (int it = 0; it < 10000; ++it) {
        double alpha = ud(rng);
        i64 qbound = 1 + static_cast<i64>(rng() % 5000);
        auto r = rational_approx(alpha, qbound);
        CHECK(r.q >= 1);
        CHECK(r.q <= qbound);
        CHECK(std::abs(r.lambda) <= 1.0 / (static_cast<double>(r.q) * qbound) + 1e-15);
    }
}

TEST_CASE("weyl_check structure and alpha = 0 row") {
    std::vector<i64> F(100, 0);
    QuadraticForm form{10, std::move(F), 0};
    for (int i = 0; i < 5; ++i) {
        form.at(i, i + 5) = 1;
        form.at(i + 5, i) = 1;
    }
    auto p = WeightModel::primes();
    auto rep = weyl_check(form, p, 10.0, {0.0, std::sqrt(2.0) - 1.0});
    CHECK(rep.r == 5);
    REQUIRE(rep.rows.size() == 2);
    const auto& zero = rep.rows[0];
    CHECK(zero.q == 1);
    double As = std::pow(p.cumulative(10.0), 10);
    CHECK(zero.S_abs == doctest::Approx(As).epsilon(1e-9));
    CHECK(zero.ratio <= std::pow(10.0, 2.5) + 1e-9);
    for (const auto& row : rep.rows) {
        CHECK(row.rhs > 0);
        CHECK(std::isfinite(row.ratio));
    }
}

TEST_CASE("minor_arc_samples stay in range and are seeded") {
    auto a = minor_arc_samples(100.0, 2, 4, 8, 9);
    auto b = minor_arc_samples(100.0, 2, 4, 8, 9);
    auto c = minor_arc_samples(100.0, 2, 4, 8, 10);
    CHECK(a.size() == 8);
    CHECK(a == b);
    CHECK(a != c);
    for (double alpha : a) {
        CHECK(alpha >= 0.0);
        CHECK(alpha < 1.0);
    }
}

TEST_CASE("major_factorization_check at alpha = 0") {
    auto form = QuadraticForm::make(2, {1, 0, 0, 1}, 0);
    auto p = WeightModel::primes();
    auto chk = major_factorization_check(form, p, 0.0, 1e4, 20, 3);
    CHECK(chk.q == 1);
    CHECK(chk.lambda == 0.0);
    CHECK_FALSE(chk.too_small);
    // S(0) = A(X)^2 against (Psi-mass)^2: within the smooth error band
    CHECK(chk.relative_error < 0.05);
}

TEST_CASE("major_factorization_check too-small branch") {
    // s = 1, f = x^2, q = 2, a = 1: the residue factor vanishes
    auto form = QuadraticForm::make(1, {1}, 0);
    auto u = WeightModel::unit();
    auto chk = major_factorization_check(form, u, 0.5, 200.0, 10, 2);
    CHECK(chk.q == 2);
    CHECK(chk.too_small);
}

TEST_CASE("major_factorization_check error shrinks with X") {
    auto form = QuadraticForm::make(2, {1, 0, 0, 1}, 0);
    auto p = WeightModel::primes();
    double prev = 1e9;
    for (double X : {1e3, 1e4}) {
        double alpha = 1.0 / 3.0 + 0.05 / (X * X);
        auto chk = major_factorization_check(form, p, alpha, X, 5, 3);
        REQUIRE_FALSE(chk.too_small);
        CHECK(chk.q == 3);
        CHECK(chk.relative_error < prev);
        prev = chk.relative_error;
    }
}

TEST_CASE("major_factorization_check dimension budget") {
    std::vector<i64> F(16, 0);
    for (int i = 0; i < 4; ++i) F[i * 4 + i] = 1;
    auto f4 = QuadraticForm::make(4, std::move(F), 0);
    CHECK_THROWS_AS(major_factorization_check(f4, WeightModel::unit(), 0.1, 100, 5, 2),
                    budget_error);
}
