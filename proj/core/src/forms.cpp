#include "wcm/forms.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "wcm/errors.hpp"

namespace wcm {

BigInt QuadraticForm::evaluate(std::span<const i64> x) const {
    if (static_cast<int>(x.size()) != s)
        throw input_error("evaluate: vector length != s");
    BigInt acc = 0;
    for (int i = 0; i < s; ++i) {
        BigInt row = 0;
        for (int j = 0; j < s; ++j) row += BigInt(at(i, j)) * x[j];
        acc += BigInt(x[i]) * row;
    }
    return acc;
}

double QuadraticForm::evaluate_real(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != s)
        throw input_error("evaluate_real: vector length != s");
    double acc = 0;
    for (int i = 0; i < s; ++i) {
        double row = 0;
        for (int j = 0; j < s; ++j) row += static_cast<double>(at(i, j)) * x[j];
        acc += x[i] * row;
    }
    return acc;
}

std::vector<double> QuadraticForm::gradient(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != s)
        throw input_error("gradient: vector length != s");
    std::vector<double> g(s, 0.0);
    for (int i = 0; i < s; ++i) {
        double row = 0;
        for (int j = 0; j < s; ++j) row += static_cast<double>(at(i, j)) * x[j];
        g[i] = 2.0 * row;
    }
    return g;
}

namespace {

// Fraction-free Gaussian elimination (Bareiss). Returns {rank, det} where
// det is meaningful only for square input of full rank.
std::pair<int, BigInt> bareiss(std::vector<std::vector<BigInt>> m) {
    int rows = static_cast<int>(m.size());
    int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    BigInt prev = 1;
    int rank = 0;
    int sign = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank) {
            std::swap(m[pivot], m[rank]);
            sign = -sign;
        }
        for (int r = rank + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c)
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            m[r][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    BigInt det = 0;
    if (rank == rows && rows == cols) det = sign * prev;
    return {rank, det};
}

} // namespace

BigInt QuadraticForm::determinant() const {
    std::vector<std::vector<BigInt>> m(s, std::vector<BigInt>(s));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) m[i][j] = at(i, j);
    return bareiss(std::move(m)).second;
}

i64 QuadraticForm::max_abs_entry() const {
    i64 m = 0;
    for (i64 v : F) m = std::max(m, v < 0 ? -v : v);
    return m;
}

QuadraticForm QuadraticForm::make(int s, std::vector<i64> F, i64 t) {
    if (s < 1) throw input_error("form dimension must be >= 1");
    if (F.size() != static_cast<size_t>(s) * s)
        throw input_error("matrix size != s*s");
    QuadraticForm form{s, std::move(F), t};
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            if (form.at(i, j) != form.at(j, i))
                throw input_error("matrix not symmetric at entry (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
    if (form.determinant() == 0) throw input_error("singular form: det F = 0");
    return form;
}

QuadraticForm QuadraticForm::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw input_error(std::string("form JSON parse error: ") + e.what());
    }
    if (!j.contains("s") || !j.contains("F") || !j.contains("t"))
        throw input_error("form JSON needs keys s, F, t");
    int s = j.at("s").get<int>();
    auto rows = j.at("F");
    if (!rows.is_array() || static_cast<int>(rows.size()) != s)
        throw input_error("form JSON: F must be an s x s array");
    std::vector<i64> F;
    F.reserve(static_cast<size_t>(s) * s);
    for (auto& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != s)
            throw input_error("form JSON: F must be an s x s array");
        for (auto& v : row) F.push_back(v.get<i64>());
    }
    return make(s, std::move(F), j.at("t").get<i64>());
}

int rank_bareiss(std::vector<std::vector<BigInt>> m) {
    return bareiss(std::move(m)).first;
}

BlockDecomposition block_rank(const QuadraticForm& form,
                              const std::vector<int>& partition_y) {
    int s = form.s;
    int n = s / 2;
    if (static_cast<int>(partition_y.size()) != n)
        throw input_error("partition must have size floor(s/2)");
    std::vector<int> y = partition_y;
    std::sort(y.begin(), y.end());
    std::vector<char> in_y(s, 0);
    for (int i : y) {
        if (i < 0 || i >= s) throw input_error("partition index out of range");
        if (in_y[i]) throw input_error("partition has duplicate index");
        in_y[i] = 1;
    }
    std::vector<int> z;
    for (int i = 0; i < s; ++i)
        if (!in_y[i]) z.push_back(i);

    BlockDecomposition d;
    d.partition_y = y;
    auto slice = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
        std::vector<std::vector<i64>> m(rows.size(), std::vector<i64>(cols.size()));
        for (size_t a = 0; a < rows.size(); ++a)
            for (size_t b = 0; b < cols.size(); ++b) m[a][b] = form.at(rows[a], cols[b]);
        return m;
    };
    d.F1 = slice(y, y);
    d.F2 = slice(z, y);
    d.F3 = slice(y, z);
    d.F4 = slice(z, z);

    std::vector<std::vector<BigInt>> m(d.F2.size(), std::vector<BigInt>(n));
    for (size_t a = 0; a < d.F2.size(); ++a)
        for (int b = 0; b < n; ++b) m[a][b] = d.F2[a][b];
    d.r = rank_bareiss(std::move(m));
    return d;
}

L1Result check_L1(const QuadraticForm& form) {
    if (form.s < 2) throw input_error("L1 check needs s >= 2");
    if (form.s > 24)
        throw budget_error("partition_search_s", form.s, 24);
    int s = form.s;
    int n = s / 2;
    int rmax_possible = std::min(n, s - n);

    std::vector<int> subset(n);
    for (int i = 0; i < n; ++i) subset[i] = i;

    L1Result best;
    best.best.r = -1;
    for (;;) {
        BlockDecomposition d = block_rank(form, subset);
        if (d.r > best.best.r) {
            best.best = d;
            if (best.best.r == rmax_possible) break; // lexicographically first max
        }
        // next subset in lexicographic order
        int i = n - 1;
        while (i >= 0 && subset[i] == s - n + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < n; ++j) subset[j] = subset[j - 1] + 1;
    }
    best.satisfied = best.best.r >= 5;
    return best;
}

YZDecomposition yz_decompose(const QuadraticForm& form,
                             const std::vector<int>& partition_y) {
    BlockDecomposition d = block_rank(form, partition_y);
    YZDecomposition yz;
    yz.partition_y = d.partition_y;
    yz.r_coeffs = d.F1;
    yz.q_coeffs = d.F4;
    int n = static_cast<int>(d.F1.size());
    int m = static_cast<int>(d.F4.size());
    // y_j g_j(z): cross part is y^T (F3) z + z^T (F2) y = 2 y^T F3 z by symmetry
    yz.g.assign(n, std::vector<i64>(m));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < m; ++k) yz.g[j][k] = 2 * d.F3[j][k];
    yz.h.assign(m, std::vector<i64>(n));
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < n; ++j) yz.h[k][j] = 2 * d.F2[k][j];
    return yz;
}

} // namespace wcm
