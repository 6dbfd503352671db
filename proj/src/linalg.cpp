#include "qtverberg/linalg.hpp"

#include <utility>

namespace qtv::linalg {

RowEchelon row_reduce(Matrix m)
{
    RowEchelon out;
    if (m.empty())
        return out;
    const std::size_t cols = m.front().size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0)
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[row], m[pivot]);
        const Scalar inv = 1 / m[row][col];
        for (std::size_t j = col; j < cols; ++j)
            m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0)
                continue;
            const Scalar f = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] -= f * m[row][j];
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    m.resize(row);
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Matrix &rows) { return row_reduce(rows).pivot_cols.size(); }

std::vector<std::size_t> independent_rows(const Matrix &rows)
{
    std::vector<std::size_t> chosen;
    Matrix basis;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        basis.push_back(rows[i]);
        if (rank(basis) == basis.size())
            chosen.push_back(i);
        else
            basis.pop_back();
    }
    return chosen;
}

Matrix transpose(const Matrix &m)
{
    if (m.empty())
        return {};
    Matrix t(m.front().size(), Vector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            t[j][i] = m[i][j];
    return t;
}

std::optional<Vector> dependence(const Matrix &columns)
{
    if (columns.empty())
        return std::nullopt;
    // Null space of the matrix whose columns are `columns`.
    const RowEchelon e = row_reduce(transpose(columns));
    const std::size_t n = columns.size();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : e.pivot_cols)
        is_pivot[c] = true;
    std::size_t free_col = n;
    for (std::size_t c = 0; c < n; ++c) {
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    }
    if (free_col == n)
        return std::nullopt;
    Vector x(n, Scalar(0));
    x[free_col] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
        x[e.pivot_cols[r]] = -e.reduced[r][free_col];
    return x;
}

std::optional<Vector> solve_square(const Matrix &a, const Vector &b)
{
    const std::size_t n = a.size();
    Matrix aug = a;
    for (std::size_t i = 0; i < n; ++i)
        aug[i].push_back(b[i]);
    const RowEchelon e = row_reduce(std::move(aug));
    if (e.pivot_cols.size() != n || (n > 0 && e.pivot_cols.back() >= n))
        return std::nullopt;
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = e.reduced[i][n];
    return x;
}

} // namespace qtv::linalg
