#include <doctest.h>

#include <array>

#include "wcm/errors.hpp"
#include "wcm/forms.hpp"

using namespace wcm;

namespace {

QuadraticForm hyperbolic_pairs_form(i64 t = 0) {
    // f = 2(x1 x6 + ... + x5 x10)
    std::vector<i64> F(100, 0);
    QuadraticForm form{10, std::move(F), t};
    for (int i = 0; i < 5; ++i) {
        form.at(i, i + 5) = 1;
        form.at(i + 5, i) = 1;
    }
    return form;
}

} // namespace

TEST_CASE("evaluate exact") {
    auto f = QuadraticForm::make(2, {0, 1, 1, 0}, 0);
    std::array<i64, 2> x{3, 5};
    CHECK(f.evaluate(x) == 30);
    std::array<i64, 2> zero{0, 0};
    CHECK(f.evaluate(zero) == 0);
    auto id2 = QuadraticForm::make(2, {1, 0, 0, 1}, 0);
    std::array<i64, 2> v{3, 4};
    CHECK(id2.evaluate(v) == 25);
    // sum formula: F_ii x_i^2 + 2 sum_{i<j} F_ij x_i x_j
    auto g = QuadraticForm::make(3, {2, 1, -1, 1, 0, 3, -1, 3, 5}, 0);
    std::array<i64, 3> y{2, -1, 4};
    i64 expect = 2 * 4 + 0 * 1 + 5 * 16 + 2 * (1 * 2 * -1 + -1 * 2 * 4 + 3 * -1 * 4);
    CHECK(g.evaluate(y) == expect);
}

TEST_CASE("gradient is 2Fx") {
    auto f = QuadraticForm::make(2, {0, 1, 1, 0}, 0);
    std::array<double, 2> x{3, 5};
    auto gr = f.gradient(x);
    CHECK(gr[0] == 10.0);
    CHECK(gr[1] == 6.0);
    auto id2 = QuadraticForm::make(2, {1, 0, 0, 1}, 0);
    std::array<double, 2> ones{1, 1};
    auto g2 = id2.gradient(ones);
    CHECK(g2[0] == 2.0);
    CHECK(g2[1] == 2.0);
}

TEST_CASE("loader rejects bad input") {
    CHECK_THROWS_AS(QuadraticForm::make(2, {0, 1, 2, 0}, 0), input_error);
    CHECK_THROWS_AS(QuadraticForm::make(2, {1, 2, 2, 4}, 0), input_error); // det 0
    CHECK_THROWS_AS(QuadraticForm::make(2, {1, 0, 0}, 0), input_error);
    CHECK_THROWS_AS(QuadraticForm::from_json_text("{\"s\":2,\"F\":[[0,1],[2,0]],\"t\":0}"),
                    input_error);
    auto ok = QuadraticForm::from_json_text("{\"s\":2,\"F\":[[0,1],[1,0]],\"t\":7}");
    CHECK(ok.t == 7);
    CHECK(ok.at(0, 1) == 1);
}

TEST_CASE("determinant by fraction-free elimination") {
    CHECK(hyperbolic_pairs_form().determinant() == -1);
    auto d = QuadraticForm::make(3, {2, 0, 0, 0, 3, 0, 0, 0, 5}, 0);
    CHECK(d.determinant() == 30);
    auto m = QuadraticForm::make(3, {1, 2, 3, 2, 1, 4, 3, 4, 1}, 0);
    // det = 1(1-16) - 2(2-12) + 3(8-3) = -15 + 20 + 15 = 20
    CHECK(m.determinant() == 20);
}

TEST_CASE("block_rank") {
    auto form = hyperbolic_pairs_form();
    BlockDecomposition d = block_rank(form, {0, 1, 2, 3, 4});
    CHECK(d.r == 5);
    // F2 is the coupling block, here the identity
    CHECK(d.F2[0][0] == 1);
    CHECK(d.F2[0][1] == 0);

    auto diag = QuadraticForm::make(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}, 0);
    CHECK(block_rank(diag, {0, 1}).r == 0);

    auto cross = QuadraticForm::make(2, {0, 1, 1, 0}, 0);
    CHECK(block_rank(cross, {0}).r == 1);

    CHECK_THROWS_AS(block_rank(form, {0, 1}), input_error);
}

TEST_CASE("block_rank invariant under reordering inside the parts") {
    auto form = hyperbolic_pairs_form();
    CHECK(block_rank(form, {4, 2, 0, 3, 1}).r == 5);
    CHECK(block_rank(form, {0, 1, 2, 3, 5}).r == block_rank(form, {5, 3, 2, 1, 0}).r);
}

TEST_CASE("check_L1") {
    auto form = hyperbolic_pairs_form();
    auto res = check_L1(form);
    CHECK(res.satisfied);
    CHECK(res.best.r == 5);
    CHECK(res.best.partition_y == std::vector<int>{0, 1, 2, 3, 4});

    std::vector<i64> D(100, 0);
    for (int i = 0; i < 10; ++i) D[i * 10 + i] = i + 1;
    auto diag = QuadraticForm::make(10, std::move(D), 0);
    auto rd = check_L1(diag);
    CHECK_FALSE(rd.satisfied);
    CHECK(rd.best.r == 0);

    auto small = QuadraticForm::make(4, {0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0}, 0);
    auto rs = check_L1(small);
    CHECK_FALSE(rs.satisfied); // r <= 2 < 5 at s = 4
    CHECK(rs.best.r == 2);
}

TEST_CASE("check_L1 invariant under simultaneous permutation") {
    auto form = hyperbolic_pairs_form();
    // permute variables by the cycle (0 1 2 ... 9)
    std::vector<i64> P(100, 0);
    QuadraticForm perm{10, std::move(P), 0};
    auto pi = [](int i) { return (i + 1) % 10; };
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) perm.at(pi(i), pi(j)) = form.at(i, j);
    CHECK(check_L1(perm).satisfied == check_L1(form).satisfied);
    CHECK(check_L1(perm).best.r == check_L1(form).best.r);
}

TEST_CASE("yz_decompose identity on test points") {
    auto check_identity = [](const QuadraticForm& form, const std::vector<int>& Y) {
        auto yz = yz_decompose(form, Y);
        int s = form.s;
        int n = s / 2;
        std::vector<int> z;
        {
            std::vector<char> in(s, 0);
            for (int i : yz.partition_y) in[i] = 1;
            for (int i = 0; i < s; ++i)
                if (!in[i]) z.push_back(i);
        }
        // test points: 0, unit vectors, all ones, doubled unit vectors
        std::vector<std::vector<i64>> pts;
        pts.emplace_back(s, 0);
        for (int i = 0; i < s; ++i) {
            std::vector<i64> e(s, 0);
            e[i] = 1;
            pts.push_back(e);
            e[i] = 2;
            pts.push_back(e);
        }
        pts.emplace_back(s, 1);
        for (const auto& x : pts) {
            BigInt direct = form.evaluate(std::span<const i64>(x));
            // r(y) + sum_j y_j g_j(z) + q(z)
            BigInt acc = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    acc += BigInt(yz.r_coeffs[a][b]) * x[yz.partition_y[a]] * x[yz.partition_y[b]];
            for (int a = 0; a < n; ++a) {
                BigInt g = 0;
                for (size_t b = 0; b < z.size(); ++b)
                    g += BigInt(yz.g[a][b]) * x[z[b]];
                acc += BigInt(x[yz.partition_y[a]]) * g;
            }
            for (size_t a = 0; a < z.size(); ++a)
                for (size_t b = 0; b < z.size(); ++b)
                    acc += BigInt(yz.q_coeffs[a][b]) * x[z[a]] * x[z[b]];
            CHECK(acc == direct);
            // transposed family: r(y) + sum_k z_k h_k(y) + q(z)
            BigInt acc2 = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    acc2 += BigInt(yz.r_coeffs[a][b]) * x[yz.partition_y[a]] * x[yz.partition_y[b]];
            for (size_t k = 0; k < z.size(); ++k) {
                BigInt h = 0;
                for (int j = 0; j < n; ++j) h += BigInt(yz.h[k][j]) * x[yz.partition_y[j]];
                acc2 += BigInt(x[z[k]]) * h;
            }
            for (size_t a = 0; a < z.size(); ++a)
                for (size_t b = 0; b < z.size(); ++b)
                    acc2 += BigInt(yz.q_coeffs[a][b]) * x[z[a]] * x[z[b]];
            CHECK(acc2 == direct);
        }
    };

    check_identity(QuadraticForm::make(2, {0, 1, 1, 0}, 0), {0});
    check_identity(hyperbolic_pairs_form(), {0, 1, 2, 3, 4});
    check_identity(QuadraticForm::make(3, {1, 0, 0, 0, 1, 0, 0, 0, -2}, 0), {0});
    check_identity(QuadraticForm::make(4, {2, 1, 3, 0, 1, -1, 0, 2, 3, 0, 4, 1, 0, 2, 1, -3}, 0),
                   {1, 3});
}

TEST_CASE("yz_decompose simple cases") {
    auto cross = QuadraticForm::make(2, {0, 1, 1, 0}, 0);
    auto yz = yz_decompose(cross, {0});
    CHECK(yz.r_coeffs[0][0] == 0);
    CHECK(yz.g[0][0] == 2); // g_1(z) = 2z
    CHECK(yz.q_coeffs[0][0] == 0);

    auto diag = QuadraticForm::make(4, {1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 3, 0, 0, 0, 0, 4}, 0);
    auto yzd = yz_decompose(diag, {0, 1});
    for (auto& row : yzd.g)
        for (i64 v : row) CHECK(v == 0);

    auto hyp = yz_decompose(hyperbolic_pairs_form(), {0, 1, 2, 3, 4});
    for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k) CHECK(hyp.g[j][k] == (j == k ? 2 : 0));
}

TEST_CASE("L1 refuses oversized partition search") {
    std::vector<i64> F(26 * 26, 0);
    for (int i = 0; i < 26; ++i) F[i * 26 + i] = 1;
    auto big = QuadraticForm::make(26, std::move(F), 0);
    CHECK_THROWS_AS(check_L1(big), budget_error);
}
