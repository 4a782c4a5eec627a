#include <doctest.h>

#include <cmath>

#include "wcm/errors.hpp"
#include "wcm/localdens.hpp"

using namespace wcm;

namespace {

QuadraticForm two_squares(i64 t) { return QuadraticForm::make(2, {1, 0, 0, 1}, t); }

// plain unweighted solution counter mod q
i64 naive_solution_count(const QuadraticForm& form, i64 q) {
    std::vector<i64> x(form.s, 0);
    i64 count = 0;
    for (;;) {
        BigInt v = form.evaluate(std::span<const i64>(x)) - form.t;
        if (v % q == 0) ++count;
        int d = form.s - 1;
        while (d >= 0 && x[d] == q - 1) {
            x[d] = 0;
            --d;
        }
        if (d < 0) break;
        ++x[d];
    }
    return count;
}

} // namespace

TEST_CASE("M_pm anchor values: x1^2 + x2^2 = 1 at p = 2") {
    auto form = two_squares(1);
    auto u = WeightModel::unit();
    CHECK(2.0 * M_pm(form, u, 2, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(4.0 * M_pm(form, u, 2, 2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(8.0 * M_pm(form, u, 2, 3) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("unit-weight M reduces to plain counting") {
    std::vector<QuadraticForm> forms = {
        two_squares(1), two_squares(3),
        QuadraticForm::make(3, {1, 1, 0, 1, -2, 3, 0, 3, 2}, 2)};
    for (const auto& form : forms) {
        auto u = WeightModel::unit();
        for (i64 p : {2, 3, 5}) {
            for (int m = 1; m <= 2; ++m) {
                i64 q = 1;
                for (int i = 0; i < m; ++i) q *= p;
                double M = M_pm(form, u, p, m);
                double N = static_cast<double>(naive_solution_count(form, q));
                CHECK(M * std::pow(static_cast<double>(q), form.s) ==
                      doctest::Approx(N).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("chi_p rows satisfy the partial-sum identity") {
    auto form = two_squares(1);
    for (auto model : {WeightModel::unit(), WeightModel::primes(), WeightModel::kfree(2)}) {
        for (i64 p : {2, 3, 5}) {
            auto seq = chi_p(form, model, p, 4);
            for (const auto& row : seq.rows) {
                if (row.budget_skipped) continue;
                CHECK(row.discrepancy <= 1e-9 * (1.0 + row.pmM));
            }
        }
    }
}

TEST_CASE("chi_p anchor: unit weights, p = 2 partial reaches 2") {
    auto seq = chi_p(two_squares(1), WeightModel::unit(), 2, 3);
    REQUIRE(seq.rows.size() == 3);
    CHECK(seq.rows[2].pmM == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(seq.rows[2].B_partial == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("chi_p stabilizes at p = 3 for x1^2 + x2^2 = 1") {
    auto seq = chi_p(two_squares(1), WeightModel::unit(), 3, 4);
    // 3^m M(3^m) is constant from m = 1 on (all solutions nonsingular)
    double v = seq.rows[0].pmM;
    CHECK(v == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    for (const auto& row : seq.rows) CHECK(row.pmM == doctest::Approx(v).epsilon(1e-9));
    CHECK(seq.stabilized);
}

TEST_CASE("lifting fast path agrees with direct enumeration") {
    auto form = two_squares(1);
    auto u = WeightModel::unit();
    LocalDensityOpts tight;
    tight.enumeration_cap = 50; // only m = 1 enumerable at p = 3 (9 tuples)
    auto lifted = chi_p(form, u, 3, 3, tight);
    LocalDensityOpts wide;
    auto direct = chi_p(form, u, 3, 3, wide);
    REQUIRE(lifted.rows.size() == direct.rows.size());
    for (size_t i = 0; i < lifted.rows.size(); ++i) {
        CHECK_FALSE(lifted.rows[i].budget_skipped);
        CHECK(lifted.rows[i].pmM == doctest::Approx(direct.rows[i].pmM).epsilon(1e-12));
    }
    CHECK(lifted.rows[1].method == "lift");
    CHECK(direct.rows[1].method == "enum");
}

TEST_CASE("kfree lifting waits for m >= k") {
    auto form = two_squares(1);
    auto k2 = WeightModel::kfree(2);
    LocalDensityOpts tight;
    tight.enumeration_cap = 5; // m = 1 fits (2^2 = 4 tuples), m = 2 does not
    auto seq = chi_p(form, k2, 2, 3, tight);
    CHECK(seq.rows[0].method == "enum");
    // no lift from m = 1 < k for kfree(2), so m = 2 must be skipped
    CHECK(seq.rows[1].budget_skipped);
}

TEST_CASE("search_condition_B finds the all-ones witness") {
    std::vector<i64> F(100, 0);
    QuadraticForm form{10, std::move(F), 10};
    for (int i = 0; i < 5; ++i) {
        form.at(i, i + 5) = 1;
        form.at(i + 5, i) = 1;
    }
    // det = -1, modulus 2^(2k-1) = 8, f(1,...,1) = 10 = t
    auto res = search_condition_B(form, 2, 100);
    REQUIRE(res.found);
    CHECK(res.modulus == 8);
    CHECK(res.bad_primes == std::vector<i64>{2});
    std::vector<i64> w;
    for (const auto& b : res.witness) w.push_back(b.convert_to<i64>());
    BigInt v = form.evaluate(std::span<const i64>(w));
    CHECK((v - form.t) % res.modulus == 0);
    for (const auto& b : res.witness) CHECK(b % 4 != 0);
}

TEST_CASE("search_condition_B honest misses") {
    // x1^2 + x2^2 = 7 mod 8 has no solutions at all
    auto form = two_squares(7);
    auto miss = search_condition_B(form, 2, 5000);
    CHECK_FALSE(miss.found);
    CHECK(miss.attempts == 5000);

    auto zero_budget = search_condition_B(form, 2, 0);
    CHECK_FALSE(zero_budget.found);
    CHECK(zero_budget.attempts == 0);
}

TEST_CASE("search_condition_B randomized witnesses re-verify") {
    // x1^2 + x2^2 = 2 mod 8 is solvable with odd coordinates
    auto form = two_squares(2);
    auto res = search_condition_B(form, 2, 20000, 99);
    REQUIRE(res.found);
    std::vector<i64> w;
    for (const auto& b : res.witness) w.push_back(b.convert_to<i64>());
    BigInt v = form.evaluate(std::span<const i64>(w));
    CHECK((v - form.t) % res.modulus == 0);
    for (const auto& b : res.witness) CHECK(b % 4 != 0);
}
