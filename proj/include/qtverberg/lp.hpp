#pragma once

#include "qtverberg/scalar.hpp"

#include <cstddef>
#include <vector>

namespace qtv::lp {

// Standard equality form: rows * x = rhs, x >= 0. An empty objective asks for
// feasibility only; otherwise the objective is maximized.
struct Problem {
    std::vector<Vector> rows;
    Vector rhs;
    Vector objective;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
    Status status = Status::infeasible;
    // Basic feasible solution (status == optimal).
    Vector x;
    // Structural columns that are basic at the final tableau.
    std::vector<std::size_t> basic_columns;
    // Farkas ray (status == infeasible): y with y.rows[.][j] >= 0 for every
    // column j and y.rhs < 0.
    Vector farkas;
    std::size_t pivots = 0;
};

// Two-phase dense tableau simplex over exact rationals. Entering and leaving
// variables follow Bland's rule, so the method terminates on degenerate
// problems and is deterministic.
Solution solve(const Problem &problem);

} // namespace qtv::lp
