#include "qtverberg/lp.hpp"

#include <optional>
#include <stdexcept>

namespace qtv::lp {

namespace {

class Tableau {
public:
    Tableau(const Problem &p)
        : m_(p.rows.size()), n_(m_ ? p.rows.front().size() : 0), flipped_(m_, false),
          t_(m_, Vector(n_ + m_ + 1, Scalar(0))), basis_(m_)
    {
        for (std::size_t i = 0; i < m_; ++i) {
            if (p.rows[i].size() != n_)
                throw std::invalid_argument("lp: ragged constraint matrix");
            flipped_[i] = p.rhs[i] < 0;
            for (std::size_t j = 0; j < n_; ++j)
                t_[i][j] = flipped_[i] ? Scalar(-p.rows[i][j]) : p.rows[i][j];
            t_[i][n_ + i] = 1;
            t_[i][rhs_col()] = flipped_[i] ? Scalar(-p.rhs[i]) : p.rhs[i];
            basis_[i] = n_ + i;
        }
    }

    std::size_t rhs_col() const { return n_ + m_; }
    bool artificial(std::size_t col) const { return col >= n_; }

    // Runs Bland's rule simplex minimizing `cost` (length n + m). Returns
    // false when unbounded.
    bool minimize(const Vector &cost, bool allow_artificial, std::size_t &pivots)
    {
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                if (!allow_artificial && artificial(j))
                    continue;
                Scalar reduced = cost[j];
                for (std::size_t i = 0; i < m_; ++i)
                    if (t_[i][j] != 0)
                        reduced -= cost[basis_[i]] * t_[i][j];
                if (reduced < 0) {
                    entering = j;
                    break;
                }
            }
            if (!entering)
                return true;
            const std::size_t col = *entering;
            std::optional<std::size_t> leaving;
            Scalar best_ratio;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][col] <= 0)
                    continue;
                Scalar ratio = t_[i][rhs_col()] / t_[i][col];
                if (!leaving || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (!leaving)
                return false;
            pivot(*leaving, col);
            ++pivots;
        }
    }

    void pivot(std::size_t row, std::size_t col)
    {
        const Scalar inv = 1 / t_[row][col];
        for (auto &v : t_[row])
            if (v != 0)
                v *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || t_[i][col] == 0)
                continue;
            const Scalar f = t_[i][col];
            for (std::size_t j = 0; j <= rhs_col(); ++j)
                if (t_[row][j] != 0)
                    t_[i][j] -= f * t_[row][j];
        }
        basis_[row] = col;
    }

    Scalar objective_value(const Vector &cost) const
    {
        Scalar v = 0;
        for (std::size_t i = 0; i < m_; ++i)
            v += cost[basis_[i]] * t_[i][rhs_col()];
        return v;
    }

    // Pivots zero-level artificial variables out of the basis where a
    // structural column allows it. Rows left with an artificial basic are
    // redundant and stay inert.
    void expel_artificials(std::size_t &pivots)
    {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!artificial(basis_[i]))
                continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (t_[i][j] != 0) {
                    pivot(i, j);
                    ++pivots;
                    break;
                }
            }
        }
    }

    Vector farkas(const Vector &cost) const
    {
        // Phase-one duals y = c_B B^-1; B^-1 sits in the artificial columns.
        Vector z(m_, Scalar(0));
        for (std::size_t k = 0; k < m_; ++k) {
            Scalar y = 0;
            for (std::size_t i = 0; i < m_; ++i)
                y += cost[basis_[i]] * t_[i][n_ + k];
            z[k] = flipped_[k] ? y : Scalar(-y);
        }
        return z;
    }

    void extract(Solution &s) const
    {
        s.x.assign(n_, Scalar(0));
        s.basic_columns.clear();
        for (std::size_t i = 0; i < m_; ++i) {
            if (artificial(basis_[i]))
                continue;
            s.x[basis_[i]] = t_[i][rhs_col()];
            s.basic_columns.push_back(basis_[i]);
        }
    }

    std::size_t structural() const { return n_; }
    std::size_t rows() const { return m_; }

private:
    std::size_t m_;
    std::size_t n_;
    std::vector<bool> flipped_;
    std::vector<Vector> t_;
    std::vector<std::size_t> basis_;
};

} // namespace

Solution solve(const Problem &problem)
{
    if (problem.rows.size() != problem.rhs.size())
        throw std::invalid_argument("lp: row count does not match rhs length");
    Tableau tab(problem);
    const std::size_t n = tab.structural();
    const std::size_t m = tab.rows();
    if (!problem.objective.empty() && problem.objective.size() != n)
        throw std::invalid_argument("lp: objective length does not match column count");

    Solution out;
    Vector phase_one(n + m, Scalar(0));
    for (std::size_t i = 0; i < m; ++i)
        phase_one[n + i] = 1;
    tab.minimize(phase_one, true, out.pivots);
    if (tab.objective_value(phase_one) > 0) {
        out.status = Status::infeasible;
        out.farkas = tab.farkas(phase_one);
        return out;
    }

    tab.expel_artificials(out.pivots);
    if (!problem.objective.empty()) {
        Vector cost(n + m, Scalar(0));
        for (std::size_t j = 0; j < n; ++j)
            cost[j] = -problem.objective[j];
        if (!tab.minimize(cost, false, out.pivots)) {
            out.status = Status::unbounded;
            tab.extract(out);
            return out;
        }
    }
    out.status = Status::optimal;
    tab.extract(out);
    return out;
}

} // namespace qtv::lp
