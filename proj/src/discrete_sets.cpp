#include "qtverberg/discrete_sets.hpp"

#include "qtverberg/linalg.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace qtv {

LatticeBasis::LatticeBasis(std::size_t dim, std::vector<Vector> vectors) : dim_(dim), vectors_(std::move(vectors))
{
    if (dim_ == 0)
        throw DiscreteSetError("lattice dimension must be positive");
    if (vectors_.empty())
        throw DiscreteSetError("lattice basis must contain at least one vector");
    for (const auto &v : vectors_)
        if (v.size() != dim_)
            throw DiscreteSetError("lattice basis vector has wrong dimension");
    const auto echelon = linalg::row_reduce(vectors_);
    if (echelon.pivot_cols.size() != vectors_.size())
        throw DiscreteSetError("lattice basis vectors are linearly dependent");
    pivot_rows_ = echelon.pivot_cols;
    const std::size_t r = vectors_.size();
    linalg::Matrix restricted(r, Vector(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            restricted[i][j] = vectors_[j][pivot_rows_[i]];
    // Columns of the inverse, then transpose into rows.
    linalg::Matrix inv_cols;
    for (std::size_t j = 0; j < r; ++j) {
        Vector e(r, Scalar(0));
        e[j] = 1;
        inv_cols.push_back(*linalg::solve_square(restricted, e));
    }
    pivot_inverse_ = linalg::transpose(inv_cols);
}

LatticeBasis LatticeBasis::standard(std::size_t dim)
{
    std::vector<Vector> vs(dim, Vector(dim, Scalar(0)));
    for (std::size_t i = 0; i < dim; ++i)
        vs[i][i] = 1;
    return LatticeBasis(dim, std::move(vs));
}

Vector LatticeBasis::projected_coordinates(const Point &p) const
{
    if (p.size() != dim_)
        throw GeometryError("dimension mismatch in lattice coordinates");
    const std::size_t r = rank();
    Vector c(r, Scalar(0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            c[i] += pivot_inverse_[i][j] * p[pivot_rows_[j]];
    return c;
}

std::optional<Vector> LatticeBasis::coordinates(const Point &p) const
{
    const std::size_t r = rank();
    Vector c = projected_coordinates(p);
    if (r < dim_) {
        Point back(dim_, Scalar(0));
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < dim_; ++i)
                back[i] += c[j] * vectors_[j][i];
        if (back != p)
            return std::nullopt;
    }
    return c;
}

Point LatticeBasis::point_at(const std::vector<Integer> &coords) const
{
    Point p(dim_, Scalar(0));
    for (std::size_t j = 0; j < coords.size(); ++j)
        if (coords[j] != 0)
            for (std::size_t i = 0; i < dim_; ++i)
                p[i] += Scalar(coords[j]) * vectors_[j][i];
    return p;
}

bool LatticeBasis::contains(const Point &p) const
{
    auto c = coordinates(p);
    return c && std::all_of(c->begin(), c->end(), [](const Scalar &x) { return is_integer(x); });
}

bool LatticeBasis::contains_lattice(const LatticeBasis &sub) const
{
    if (sub.dim() != dim_)
        return false;
    return std::all_of(sub.vectors().begin(), sub.vectors().end(), [&](const Vector &v) { return contains(v); });
}

Box Box::cube(std::size_t dim, long lo, long hi)
{
    Box b;
    b.lower.assign(dim, Integer(lo));
    b.upper.assign(dim, Integer(hi));
    return b;
}

PointSet Box::corners() const
{
    const std::size_t d = dim();
    PointSet out(d);
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        Point p(d);
        for (std::size_t i = 0; i < d; ++i)
            p[i] = Scalar((mask >> i) & 1 ? upper[i] : lower[i]);
        if (!out.contains(p))
            out.push_back(std::move(p));
    }
    return out;
}

DiscreteSetSpec DiscreteSetSpec::integer_lattice(std::size_t dim) { return lattice(LatticeBasis::standard(dim)); }

DiscreteSetSpec DiscreteSetSpec::lattice(LatticeBasis basis)
{
    DiscreteSetSpec s;
    s.variant_ = Variant::lattice;
    s.dim_ = basis.dim();
    s.basis_ = std::move(basis);
    return s;
}

DiscreteSetSpec DiscreteSetSpec::difference(LatticeBasis basis, std::vector<LatticeBasis> sublattices)
{
    for (std::size_t i = 0; i < sublattices.size(); ++i)
        if (!basis.contains_lattice(sublattices[i]))
            throw DiscreteSetError("sublattice " + std::to_string(i) + " is not contained in the lattice");
    DiscreteSetSpec s;
    s.variant_ = Variant::difference;
    s.dim_ = basis.dim();
    s.basis_ = std::move(basis);
    s.sublattices_ = std::move(sublattices);
    return s;
}

DiscreteSetSpec DiscreteSetSpec::mixed(std::size_t integer_dims, std::size_t real_dims)
{
    if (integer_dims + real_dims == 0)
        throw DiscreteSetError("mixed set needs a positive dimension");
    DiscreteSetSpec s;
    s.variant_ = Variant::mixed;
    s.dim_ = integer_dims + real_dims;
    s.a_ = integer_dims;
    s.b_ = real_dims;
    return s;
}

std::string DiscreteSetSpec::describe() const
{
    switch (variant_) {
    case Variant::lattice:
        return "lattice of rank " + std::to_string(basis_.rank()) + " in dimension " + std::to_string(dim_);
    case Variant::difference:
        return "lattice of rank " + std::to_string(basis_.rank()) + " minus " +
               std::to_string(sublattices_.size()) + " sublattice(s) in dimension " + std::to_string(dim_);
    case Variant::mixed:
        return "Z^" + std::to_string(a_) + " x R^" + std::to_string(b_);
    }
    return {};
}

namespace {

void require_enumerable(const DiscreteSetSpec &s)
{
    if (!s.enumerable())
        throw DiscreteSetError("the mixed set Z^a x R^b supports bound formulas only");
}

bool in_difference(const DiscreteSetSpec &s, const Point &p)
{
    return std::none_of(s.sublattices().begin(), s.sublattices().end(),
                        [&](const LatticeBasis &sub) { return sub.contains(p); });
}

// Calls visit(x) for every lattice point whose lattice coordinates lie in the
// integer hull of the coordinates of `vertices`, in odometer order.
void scan_lattice(const LatticeBasis &basis, const PointSet &vertices, const std::function<void(Point)> &visit)
{
    const std::size_t r = basis.rank();
    std::vector<Integer> lo(r), hi(r);
    bool first = true;
    for (const auto &v : vertices) {
        // The left inverse is linear on all of R^d, so its range over the
        // vertices bounds the coordinates of every point of conv(vertices) ∩ L.
        const Vector c = basis.projected_coordinates(v);
        for (std::size_t j = 0; j < r; ++j) {
            Integer f = floor_of(c[j]);
            Integer g = ceil_of(c[j]);
            if (first || f < lo[j])
                lo[j] = f;
            if (first || g > hi[j])
                hi[j] = g;
        }
        first = false;
    }
    std::vector<Integer> cur = lo;
    for (;;) {
        visit(basis.point_at(cur));
        std::size_t j = 0;
        while (j < r) {
            if (cur[j] < hi[j]) {
                ++cur[j];
                break;
            }
            cur[j] = lo[j];
            ++j;
        }
        if (j == r)
            break;
    }
}

bool in_box(const Box &box, const Point &p)
{
    for (std::size_t i = 0; i < box.dim(); ++i)
        if (p[i] < Scalar(box.lower[i]) || p[i] > Scalar(box.upper[i]))
            return false;
    return true;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw DiscreteSetError("bound exceeds 64-bit range");
    return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw DiscreteSetError("bound exceeds 64-bit range");
    return out;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp)
{
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exp; ++i)
        out = checked_mul(out, base);
    return out;
}

// (2^r - 2) * ceil(2(k+1)/3) + 2 for a rank-r lattice.
std::uint64_t lattice_quantitative_bound(std::size_t r, std::size_t k)
{
    const std::uint64_t ceil_term = (2 * (static_cast<std::uint64_t>(k) + 1) + 2) / 3;
    return checked_add(checked_mul(checked_pow(2, r) - 2, ceil_term), 2);
}

void require_subset(const DiscreteSetSpec &s, const PointSet &p)
{
    for (const auto &x : p)
        if (!set_contains(s, x))
            throw DiscreteSetError("point " + format_point(x) + " is not in S");
}

} // namespace

bool set_contains(const DiscreteSetSpec &s, const Point &p)
{
    require_enumerable(s);
    if (p.size() != s.dim())
        throw GeometryError("dimension mismatch in set membership");
    if (!s.basis().contains(p))
        return false;
    return s.variant() == DiscreteSetSpec::Variant::lattice || in_difference(s, p);
}

std::vector<Point> enumerate_in_polytope(const DiscreteSetSpec &s, const PolytopeV &k)
{
    require_enumerable(s);
    if (k.vertices.empty())
        throw GeometryError("polytope needs at least one vertex");
    if (k.vertices.dim() != s.dim())
        throw GeometryError("polytope dimension does not match the set");
    std::vector<Point> out;
    scan_lattice(s.basis(), k.vertices, [&](Point x) {
        if (s.variant() == DiscreteSetSpec::Variant::difference && !in_difference(s, x))
            return;
        if (in_hull(x, k.vertices))
            out.push_back(std::move(x));
    });
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

std::vector<Point> enumerate_in_box(const DiscreteSetSpec &s, const Box &box)
{
    require_enumerable(s);
    if (box.dim() != s.dim())
        throw GeometryError("box dimension does not match the set");
    for (std::size_t i = 0; i < box.dim(); ++i)
        if (box.lower[i] > box.upper[i])
            throw GeometryError("box has an empty coordinate range");
    std::vector<Point> out;
    scan_lattice(s.basis(), box.corners(), [&](Point x) {
        if (!in_box(box, x))
            return;
        if (s.variant() == DiscreteSetSpec::Variant::difference && !in_difference(s, x))
            return;
        out.push_back(std::move(x));
    });
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

std::uint64_t count_in_box(const DiscreteSetSpec &s, const Box &box)
{
    require_enumerable(s);
    const auto &vs = s.basis().vectors();
    bool standard = s.variant() == DiscreteSetSpec::Variant::lattice && vs.size() == s.dim();
    for (std::size_t i = 0; standard && i < vs.size(); ++i)
        for (std::size_t j = 0; j < vs[i].size(); ++j)
            if (vs[i][j] != (i == j ? 1 : 0))
                standard = false;
    if (!standard)
        return enumerate_in_box(s, box).size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < box.dim(); ++i) {
        Integer width = box.upper[i] - box.lower[i] + 1;
        if (width <= 0)
            return 0;
        if (!width.fits_ulong_p() || __builtin_mul_overflow(total, width.get_ui(), &total))
            return std::numeric_limits<std::uint64_t>::max();
    }
    return total;
}

namespace ground {

std::size_t count_nonvertex(const std::vector<Point> &ground_set, const PointSet &p, std::vector<Point> *nonvertex)
{
    const PointSet vertices = extreme_points(p);
    std::size_t count = 0;
    for (const auto &g : ground_set) {
        if (vertices.contains(g) || !in_hull(g, vertices))
            continue;
        ++count;
        if (nonvertex)
            nonvertex->push_back(g);
    }
    return count;
}

bool is_k_hoffman(const std::vector<Point> &ground_set, const PointSet &p, std::size_t k)
{
    const PointSet pts = p.distinct();
    if (pts.size() < 2)
        throw GeometryError("k-Hoffman test needs at least two distinct points");
    const PointSet vertices = extreme_points(pts);
    // Dropping a non-vertex leaves conv(P) unchanged, so only vertices matter.
    std::vector<PointSet> leave_one_out;
    for (const auto &v : vertices) {
        PointSet rest(pts.dim());
        for (const auto &x : pts)
            if (x != v)
                rest.push_back(x);
        leave_one_out.push_back(std::move(rest));
    }
    std::size_t common = 0;
    for (const auto &g : ground_set) {
        if (!in_hull(g, vertices))
            continue;
        if (std::all_of(leave_one_out.begin(), leave_one_out.end(),
                        [&](const PointSet &rest) { return in_hull(g, rest); }))
            if (++common >= k)
                return false;
    }
    return true;
}

} // namespace ground

std::pair<std::size_t, HollowCertificate> count_nonvertex(const DiscreteSetSpec &s, const PointSet &p,
                                                          std::size_t k)
{
    require_enumerable(s);
    if (p.empty())
        throw GeometryError("empty point set");
    require_subset(s, p);
    HollowCertificate cert;
    cert.set = p;
    cert.k = k;
    const auto candidates = enumerate_in_polytope(s, PolytopeV{extreme_points(p)});
    const std::size_t n = ground::count_nonvertex(candidates, p, &cert.nonvertex_points);
    return {n, std::move(cert)};
}

bool is_k_hollow(const PointSet &p, const DiscreteSetSpec &s, std::size_t k)
{
    if (k == 0)
        throw GeometryError("k must be positive");
    return count_nonvertex(s, p, k).first < k;
}

bool is_k_hoffman(const PointSet &p, const DiscreteSetSpec &s, std::size_t k)
{
    require_enumerable(s);
    if (k == 0)
        throw GeometryError("k must be positive");
    if (p.distinct().size() < 2)
        throw GeometryError("k-Hoffman test needs at least two distinct points");
    require_subset(s, p);
    const auto candidates = enumerate_in_polytope(s, PolytopeV{extreme_points(p)});
    return ground::is_k_hoffman(candidates, p, k);
}

HollowCertificate hollow_search(const DiscreteSetSpec &s, const Box &box, std::size_t k, SearchMode mode,
                                const HollowSearchOptions &opts)
{
    if (k == 0)
        throw GeometryError("k must be positive");
    const std::vector<Point> ground_set = enumerate_in_box(s, box);
    const std::size_t n = ground_set.size();
    if (mode == SearchMode::exhaustive && n > opts.exhaustive_cap)
        throw CapExceeded("exhaustive hollow search over " + std::to_string(n) + " points exceeds cap " +
                          std::to_string(opts.exhaustive_cap));

    // conv(P) stays inside the box, so S ∩ conv(P) ⊆ ground_set.
    auto hollow = [&](const PointSet &p) { return ground::count_nonvertex(ground_set, p) < k; };

    PointSet best(s.dim());
    PointSet current(s.dim());
    if (mode == SearchMode::greedy) {
        // k-hollowness is inherited by subsets, so one pass yields a maximal set.
        for (const auto &g : ground_set) {
            current.push_back(g);
            if (!hollow(current)) {
                PointSet trimmed(s.dim());
                for (std::size_t i = 0; i + 1 < current.size(); ++i)
                    trimmed.push_back(current[i]);
                current = std::move(trimmed);
            }
        }
        best = current;
    } else {
        std::vector<std::size_t> chosen;
        std::function<void(std::size_t)> extend = [&](std::size_t start) {
            for (std::size_t i = start; i < n; ++i) {
                if (chosen.size() + (n - i) <= best.size())
                    return;
                chosen.push_back(i);
                PointSet candidate(s.dim());
                for (std::size_t c : chosen)
                    candidate.push_back(ground_set[c]);
                if (hollow(candidate)) {
                    if (candidate.size() > best.size())
                        best = candidate;
                    extend(i + 1);
                }
                chosen.pop_back();
            }
        };
        extend(0);
    }

    HollowCertificate cert;
    cert.set = best;
    cert.k = k;
    if (!best.empty())
        ground::count_nonvertex(ground_set, best, &cert.nonvertex_points);
    return cert;
}

std::uint64_t helly_upper_bound(const DiscreteSetSpec &s, std::size_t k, BoundMode mode)
{
    if (k == 0)
        throw DiscreteSetError("k must be positive");
    switch (s.variant()) {
    case DiscreteSetSpec::Variant::lattice: {
        const std::size_t r = s.basis().rank();
        const std::uint64_t quantitative = lattice_quantitative_bound(r, k);
        if (mode == BoundMode::best && k == 1)
            return std::min(quantitative, checked_pow(2, r));
        return quantitative;
    }
    case DiscreteSetSpec::Variant::difference: {
        const std::size_t r = s.basis().rank();
        const std::size_t m = s.sublattices().size();
        const std::uint64_t base = checked_add(checked_mul(checked_pow(2, m + 1), k), 1);
        return checked_pow(base, r);
    }
    case DiscreteSetSpec::Variant::mixed:
        if (k != 1)
            throw DiscreteSetError("no Helly bound formula for Z^a x R^b with k >= 2");
        return checked_mul(s.real_dims() + 1, checked_pow(2, s.integer_dims()));
    }
    throw DiscreteSetError("unknown set variant");
}

std::uint64_t tverberg_upper_bound(const DiscreteSetSpec &s, std::size_t m, std::size_t k, BoundMode mode)
{
    if (m == 0 || k == 0)
        throw DiscreteSetError("m and k must be positive");
    const std::uint64_t h = helly_upper_bound(s, k, mode);
    return checked_add(checked_mul(checked_mul(checked_mul(h, m - 1), k), s.dim()), k);
}

std::string to_string(BoundMode m) { return m == BoundMode::paper ? "paper" : "best"; }

BoundMode parse_bound_mode(const std::string &s)
{
    if (s == "paper")
        return BoundMode::paper;
    if (s == "best")
        return BoundMode::best;
    throw std::invalid_argument("bound mode must be 'paper' or 'best', got '" + s + "'");
}

SearchMode parse_search_mode(const std::string &s)
{
    if (s == "exhaustive")
        return SearchMode::exhaustive;
    if (s == "greedy")
        return SearchMode::greedy;
    throw std::invalid_argument("search mode must be 'exhaustive' or 'greedy', got '" + s + "'");
}

} // namespace qtv
