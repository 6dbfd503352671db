// Exact half-space depth.
//
// With v_a = a - p, depth(p, A) = #{a = p} + min over u != 0 of #{a : u.v_a >= 0}.
// The count is constant on the open cells of the central arrangement
// {u : u.v_a = 0} and can only grow on lower-dimensional faces, so the minimum
// is attained on an open cell. Every open cell of an essential arrangement in
// R^r has an extreme ray u0, orthogonal to r - 1 independent v's, and the
// cells around u0 are u0 + eps*w where w ranges over the cells of the
// arrangement restricted to Z = {v : u0.v = 0}. Hence
//
//   min_cells(V) = min over rays u0 of #{v : u0.v > 0} + min_cells(Z),
//
// which recurses down to rank one. Vectors are scaled to primitive integer
// form; positive scaling does not change any sign.

#include "qtverberg/geometry.hpp"

#include "qtverberg/linalg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qtv {

namespace {

using IVec = std::vector<Integer>;

Integer idot(const IVec &a, const IVec &b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Scalar mixed_dot(const Vector &a, const IVec &b)
{
    Scalar s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

// Bareiss fraction-free determinant.
Integer determinant(std::vector<IVec> m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0)
                ++swap;
            if (swap == n)
                return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Integer(-m[n - 1][n - 1]);
}

// Vector orthogonal to the r - 1 rows of `rows` (each of length r); zero iff
// the rows are dependent.
IVec orthogonal_complement(const std::vector<IVec> &rows)
{
    const std::size_t r = rows.size() + 1;
    IVec u(r);
    if (r == 2) {
        u[0] = -rows[0][1];
        u[1] = rows[0][0];
        return u;
    }
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<IVec> minor;
        for (const auto &row : rows) {
            IVec m;
            for (std::size_t c = 0; c < r; ++c)
                if (c != j)
                    m.push_back(row[c]);
            minor.push_back(std::move(m));
        }
        Integer det = determinant(std::move(minor));
        u[j] = (j % 2 == 0) ? det : Integer(-det);
    }
    return u;
}

std::vector<std::size_t> pivot_columns(const std::vector<IVec> &vecs)
{
    linalg::Matrix m;
    for (const auto &v : vecs) {
        Vector row;
        for (const auto &x : v)
            row.emplace_back(x);
        m.push_back(std::move(row));
    }
    return linalg::row_reduce(std::move(m)).pivot_cols;
}

struct CellCount {
    std::size_t count = std::numeric_limits<std::size_t>::max();
    // Rational functional f with exactly `count` vectors satisfying f.v >= 0
    // and no vector with f.v == 0.
    Vector functional;
};

// u + eps * w with eps small enough that no strict sign of u.v flips.
Vector perturb(const IVec &u, const Vector &w, const std::vector<IVec> &vecs)
{
    std::optional<Scalar> eps;
    for (const auto &v : vecs) {
        Integer uv = idot(u, v);
        if (uv == 0)
            continue;
        Scalar wv = mixed_dot(w, v);
        if (wv == 0)
            continue;
        Scalar bound = abs(Scalar(uv)) / abs(wv);
        if (!eps || bound < *eps)
            eps = bound;
    }
    Scalar e = eps ? Scalar(*eps / 2) : Scalar(1);
    Vector f(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        f[i] = Scalar(u[i]) + e * w[i];
    return f;
}

// Minimum over open cells of #{v : f.v > 0}. `vecs` is nonempty and holds
// nonzero vectors of a common length. Returns as soon as a count below
// `stop_below` is found.
CellCount min_cell_count(const std::vector<IVec> &vecs, std::size_t stop_below)
{
    const std::size_t r = vecs.front().size();
    const std::vector<std::size_t> pivots = pivot_columns(vecs);

    if (pivots.size() < r) {
        // Not essential: the coordinates in `pivots` identify span(vecs).
        std::vector<IVec> projected;
        projected.reserve(vecs.size());
        for (const auto &v : vecs) {
            IVec pv;
            for (std::size_t c : pivots)
                pv.push_back(v[c]);
            projected.push_back(std::move(pv));
        }
        CellCount sub = min_cell_count(projected, stop_below);
        Vector f(r, Scalar(0));
        for (std::size_t i = 0; i < pivots.size(); ++i)
            f[pivots[i]] = sub.functional[i];
        sub.functional = std::move(f);
        return sub;
    }

    if (r == 1) {
        std::size_t pos = 0;
        std::size_t neg = 0;
        for (const auto &v : vecs)
            (v[0] > 0 ? pos : neg)++;
        CellCount out;
        out.count = std::min(pos, neg);
        out.functional = {Scalar(pos <= neg ? 1 : -1)};
        return out;
    }

    CellCount best;
    IVec best_ray;
    Vector best_sub;
    std::vector<IVec> zero_set;
    std::vector<std::size_t> combo(r - 1);
    for (std::size_t i = 0; i < combo.size(); ++i)
        combo[i] = i;
    const std::size_t n = vecs.size();
    bool more = n >= r - 1;
    while (more) {
        std::vector<IVec> rows;
        for (std::size_t i : combo)
            rows.push_back(vecs[i]);
        IVec ray = orthogonal_complement(rows);
        if (std::any_of(ray.begin(), ray.end(), [](const Integer &x) { return x != 0; })) {
            for (int side = 0; side < 2; ++side) {
                if (side == 1)
                    for (auto &x : ray)
                        x = -x;
                std::size_t pos = 0;
                zero_set.clear();
                for (const auto &v : vecs) {
                    int s = sgn(idot(ray, v));
                    if (s > 0)
                        ++pos;
                    else if (s == 0)
                        zero_set.push_back(v);
                }
                if (pos >= best.count)
                    continue;
                CellCount sub = min_cell_count(zero_set, 0);
                if (pos + sub.count < best.count) {
                    best.count = pos + sub.count;
                    best_ray = ray;
                    best_sub = std::move(sub.functional);
                    if (best.count < stop_below || best.count == 0) {
                        more = false;
                        break;
                    }
                }
            }
        }
        if (!more)
            break;
        // Next combination in lexicographic order.
        std::size_t k = combo.size();
        while (k > 0 && combo[k - 1] == n - combo.size() + k - 1)
            --k;
        if (k == 0)
            break;
        ++combo[k - 1];
        for (std::size_t j = k; j < combo.size(); ++j)
            combo[j] = combo[j - 1] + 1;
    }
    best.functional = perturb(best_ray, best_sub, vecs);
    return best;
}

IVec primitive_direction(const Vector &v)
{
    Integer l = 1;
    for (const auto &c : v)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    IVec out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto &c : v) {
        out.push_back(c.get_num() * (l / c.get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g > 1)
        for (auto &x : out)
            x /= g;
    return out;
}

Halfspace witness_through(const Point &p, const Vector &normal)
{
    const IVec prim = primitive_direction(normal);
    Halfspace h;
    for (const auto &x : prim)
        h.normal.emplace_back(x);
    h.offset = dot(h.normal, p);
    return h;
}

} // namespace

std::optional<DepthResult> depth_if_at_least(const Point &p, const PointSet &set, std::size_t floor)
{
    if (p.size() != set.dim())
        throw GeometryError("dimension mismatch in depth");
    if (p.empty())
        throw GeometryError("depth needs a positive dimension");
    const PointSet pts = set.distinct();
    std::size_t coincident = 0;
    std::vector<IVec> vecs;
    for (const auto &a : pts) {
        if (a == p)
            ++coincident;
        else
            vecs.push_back(primitive_direction(subtract(a, p)));
    }

    DepthResult out;
    Vector normal(p.size(), Scalar(0));
    if (vecs.empty()) {
        normal[0] = 1;
        out.depth = coincident;
    } else {
        const std::size_t stop_below = floor > coincident ? floor - coincident : 0;
        CellCount cells = min_cell_count(vecs, stop_below);
        out.depth = coincident + cells.count;
        normal = std::move(cells.functional);
    }
    if (out.depth < floor)
        return std::nullopt;
    out.witness = witness_through(p, normal);
    if (!out.witness.contains(p) || count_in(out.witness, pts) != out.depth)
        throw std::logic_error("depth witness failed exact verification");
    return out;
}

DepthResult depth(const Point &p, const PointSet &set) { return *depth_if_at_least(p, set, 0); }

} // namespace qtv
