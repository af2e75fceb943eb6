#pragma once

// Dense Gaussian elimination over an exact field.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace risch {

template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class F>
struct LinearSolution {
    std::optional<std::vector<F>> particular;
    std::vector<std::vector<F>> nullspace;
};

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, in order.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && is_zero(m[p][col])) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        F inv = F(1L) / m[row][col];
        for (auto& v : m[row]) v = v * inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || is_zero(m[r][col])) continue;
            F f = m[r][col];
            for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] = m[r][c] - f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    return pivots;
}

/// Solves A*v = rhs. `ncols` is needed when A has no rows.
template <class F>
LinearSolution<F> solve_linear(const Matrix<F>& A, const std::vector<F>& rhs, std::size_t ncols) {
    Matrix<F> m;
    m.reserve(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        std::vector<F> row = A[i];
        row.resize(ncols, F(0L));
        row.push_back(i < rhs.size() ? rhs[i] : F(0L));
        m.push_back(std::move(row));
    }
    auto pivots = rref(m, ncols + 1);
    LinearSolution<F> out;
    bool consistent = pivots.empty() || pivots.back() < ncols;
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : pivots)
        if (p < ncols) is_pivot[p] = true;
    if (consistent) {
        std::vector<F> x(ncols, F(0L));
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][ncols];
        out.particular = std::move(x);
    }
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<F> v(ncols, F(0L));
        v[free] = F(1L);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (pivots[r] >= ncols) continue;
            v[pivots[r]] = F(0L) - m[r][free];
        }
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

template <class F>
LinearSolution<F> solve_linear(const Matrix<F>& A, const std::vector<F>& rhs) {
    return solve_linear(A, rhs, A.empty() ? 0 : A.front().size());
}

/// Kernel basis of A (A*v = 0).
template <class F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& A, std::size_t ncols) {
    return solve_linear(A, std::vector<F>(A.size(), F(0L)), ncols).nullspace;
}

template <class F>
std::size_t rank(Matrix<F> m, std::size_t ncols) {
    return rref(m, ncols).size();
}

/// Row-reduces `rows` using pivots only in columns [begin, end), applying the
/// same operations to whole rows; rows that vanish on those columns are dropped.
template <class F>
Matrix<F> echelon_on(Matrix<F> rows, std::size_t begin, std::size_t end) {
    std::size_t r = 0;
    for (std::size_t col = begin; col < end && r < rows.size(); ++col) {
        std::size_t p = r;
        while (p < rows.size() && is_zero(rows[p][col])) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        F inv = F(1L) / rows[r][col];
        for (auto& v : rows[r]) v = v * inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || is_zero(rows[i][col])) continue;
            F f = rows[i][col];
            for (std::size_t c = 0; c < rows[i].size(); ++c) rows[i][c] = rows[i][c] - f * rows[r][c];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

}  // namespace risch
