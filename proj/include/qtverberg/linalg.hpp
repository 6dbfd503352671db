#pragma once

#include "qtverberg/scalar.hpp"

#include <optional>
#include <vector>

// Small dense exact linear algebra used by the geometry kernel. Matrices are
// row-major vectors of rows; dimensions are tiny (d + 1 at most a few dozen).
namespace qtv::linalg {

using Matrix = std::vector<Vector>;

struct RowEchelon {
    Matrix reduced;                       // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivot_cols;  // one per nonzero row
};

RowEchelon row_reduce(Matrix m);

std::size_t rank(const Matrix &rows);

// Indices of a maximal linearly independent subset of rows, chosen greedily in
// input order.
std::vector<std::size_t> independent_rows(const Matrix &rows);

// A nonzero x with sum_j x_j * columns[j] = 0, if the columns are dependent.
std::optional<Vector> dependence(const Matrix &columns);

// Solves A x = b for square nonsingular A; nullopt if A is singular.
std::optional<Vector> solve_square(const Matrix &a, const Vector &b);

Matrix transpose(const Matrix &m);

} // namespace qtv::linalg
