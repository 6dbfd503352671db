#include "qtverberg/geometry.hpp"

#include "qtverberg/linalg.hpp"
#include "qtverberg/lp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qtv {

PointSet::PointSet(std::size_t dim, std::vector<Point> points) : dim_(dim)
{
    points_.reserve(points.size());
    for (auto &p : points)
        push_back(std::move(p));
}

void PointSet::push_back(Point p)
{
    if (p.size() != dim_)
        throw GeometryError("point " + format_point(p) + " does not have dimension " +
                            std::to_string(dim_));
    points_.push_back(std::move(p));
}

PointSet PointSet::subset(const std::vector<std::size_t> &indices) const
{
    PointSet out(dim_);
    for (std::size_t i : indices)
        out.points_.push_back(points_.at(i));
    return out;
}

std::optional<std::size_t> PointSet::index_of(const Point &p) const
{
    auto it = std::find(points_.begin(), points_.end(), p);
    if (it == points_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
}

PointSet PointSet::distinct() const
{
    PointSet out(dim_);
    std::set<Point, LexLess> seen;
    for (const auto &p : points_)
        if (seen.insert(p).second)
            out.points_.push_back(p);
    return out;
}

std::vector<std::size_t> ConvexCombination::indices() const
{
    std::vector<std::size_t> out;
    for (const auto &[i, c] : support)
        out.push_back(i);
    return out;
}

bool ConvexCombination::verifies(const Point &target, const PointSet &set) const
{
    if (support.empty() || target.size() != set.dim())
        return false;
    Scalar total = 0;
    Point sum(set.dim(), Scalar(0));
    for (const auto &[i, c] : support) {
        if (i >= set.size() || c < 0)
            return false;
        total += c;
        for (std::size_t j = 0; j < set.dim(); ++j)
            sum[j] += c * set[i][j];
    }
    return total == 1 && sum == target;
}

bool MembershipCertificate::verifies(const Point &p, const PointSet &set) const
{
    if (verdict == Verdict::inside)
        return combination.verifies(p, set);
    if (separator.normal.size() != set.dim() || is_zero(separator.normal))
        return false;
    if (separator.contains(p))
        return false;
    return std::all_of(set.begin(), set.end(),
                       [&](const Point &a) { return separator.contains(a); });
}

namespace {

void require_compatible(const Point &p, const PointSet &set)
{
    if (set.empty())
        throw GeometryError("empty point set");
    if (p.size() != set.dim())
        throw GeometryError("dimension mismatch: point " + format_point(p) + " vs set of dimension " +
                            std::to_string(set.dim()));
}

lp::Problem hull_problem(const Point &p, const PointSet &set)
{
    const std::size_t d = set.dim();
    lp::Problem prob;
    prob.rows.assign(d + 1, Vector(set.size(), Scalar(0)));
    for (std::size_t j = 0; j < set.size(); ++j) {
        for (std::size_t i = 0; i < d; ++i)
            prob.rows[i][j] = set[j][i];
        prob.rows[d][j] = 1;
    }
    prob.rhs = p;
    prob.rhs.emplace_back(1);
    return prob;
}

bool outside_bounding_box(const Point &p, const PointSet &set)
{
    for (std::size_t i = 0; i < set.dim(); ++i) {
        bool below = true;
        bool above = true;
        for (const auto &a : set) {
            if (a[i] <= p[i])
                below = false;
            if (a[i] >= p[i])
                above = false;
        }
        if (below || above)
            return true;
    }
    return false;
}

// Scales the normal to a primitive integer vector; the half-space is unchanged.
Halfspace normalized(Halfspace h)
{
    Integer l = 1;
    for (const auto &c : h.normal)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    Integer g = 0;
    for (const auto &c : h.normal) {
        Integer v = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (g == 0)
        return h;
    const Scalar factor = Scalar(l) / Scalar(g);
    for (auto &c : h.normal)
        c *= factor;
    h.offset *= factor;
    return h;
}

// Removes affine dependences from a positive combination until its support is
// affinely independent, keeping the represented point.
void reduce_support(std::vector<std::pair<std::size_t, Scalar>> &support, const PointSet &set)
{
    for (;;) {
        linalg::Matrix columns;
        for (const auto &[i, c] : support) {
            Vector col = set[i];
            col.emplace_back(1);
            columns.push_back(std::move(col));
        }
        auto mu = linalg::dependence(columns);
        if (!mu)
            return;
        if (std::none_of(mu->begin(), mu->end(), [](const Scalar &x) { return x > 0; }))
            for (auto &x : *mu)
                x = -x;
        std::optional<Scalar> alpha;
        for (std::size_t j = 0; j < support.size(); ++j) {
            if ((*mu)[j] <= 0)
                continue;
            Scalar r = support[j].second / (*mu)[j];
            if (!alpha || r < *alpha)
                alpha = r;
        }
        std::vector<std::pair<std::size_t, Scalar>> next;
        for (std::size_t j = 0; j < support.size(); ++j) {
            Scalar c = support[j].second - *alpha * (*mu)[j];
            if (c != 0)
                next.emplace_back(support[j].first, c);
        }
        support = std::move(next);
    }
}

} // namespace

MembershipCertificate membership(const Point &p, const PointSet &set)
{
    require_compatible(p, set);
    const std::size_t d = set.dim();
    MembershipCertificate cert;
    const lp::Solution sol = lp::solve(hull_problem(p, set));
    if (sol.status == lp::Status::optimal) {
        cert.verdict = Verdict::inside;
        for (std::size_t j = 0; j < sol.x.size(); ++j)
            if (sol.x[j] > 0)
                cert.combination.support.emplace_back(j, sol.x[j]);
    } else {
        cert.verdict = Verdict::outside;
        Halfspace h;
        h.normal.assign(sol.farkas.begin(), sol.farkas.begin() + static_cast<long>(d));
        h.offset = -sol.farkas[d];
        cert.separator = normalized(std::move(h));
    }
    if (!cert.verifies(p, set))
        throw std::logic_error("membership certificate failed exact verification");
    return cert;
}

bool in_hull(const Point &p, const PointSet &set)
{
    require_compatible(p, set);
    if (set.contains(p))
        return true;
    if (outside_bounding_box(p, set))
        return false;
    return lp::solve(hull_problem(p, set)).status == lp::Status::optimal;
}

CaratheodoryResult caratheodory_reduce(const Point &p, const PointSet &set)
{
    require_compatible(p, set);
    CaratheodoryResult out;
    out.points = PointSet(set.dim());
    if (auto idx = set.index_of(p)) {
        out.points.push_back(p);
        out.combination.support.emplace_back(*idx, Scalar(1));
        return out;
    }
    MembershipCertificate cert = membership(p, set);
    if (!cert.inside())
        throw GeometryError("point " + format_point(p) + " is not in the convex hull");
    auto support = std::move(cert.combination.support);
    reduce_support(support, set);
    std::sort(support.begin(), support.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    for (const auto &[i, c] : support)
        out.points.push_back(set[i]);
    out.combination.support = std::move(support);
    if (out.points.size() > set.dim() + 1 || !out.combination.verifies(p, set))
        throw std::logic_error("Carathéodory reduction produced an invalid support");
    return out;
}

AnchoredResult anchored_reduce(const Point &y, const Point &anchor, const PointSet &set)
{
    require_compatible(y, set);
    if (anchor.size() != set.dim())
        throw GeometryError("anchor dimension mismatch");
    const std::size_t d = set.dim();
    AnchoredResult out;
    out.points = PointSet(d);
    if (y == anchor) {
        out.anchor_weight = 1;
        return out;
    }
    if (auto idx = set.index_of(y)) {
        out.points.push_back(y);
        out.indices.push_back(*idx);
        out.combination.support.emplace_back(*idx, Scalar(1));
        out.anchor_weight = 0;
        return out;
    }

    lp::Problem prob = hull_problem(y, set);
    for (std::size_t i = 0; i < d; ++i)
        prob.rows[i].push_back(anchor[i]);
    prob.rows[d].emplace_back(1);
    prob.objective.assign(set.size() + 1, Scalar(0));
    prob.objective.back() = 1;
    const lp::Solution sol = lp::solve(prob);
    if (sol.status != lp::Status::optimal)
        throw GeometryError("point " + format_point(y) + " is not in conv(set + anchor)");

    out.anchor_weight = sol.x.back();
    Point sum(d, Scalar(0));
    for (std::size_t j = 0; j < set.size(); ++j) {
        if (sol.x[j] <= 0)
            continue;
        out.indices.push_back(j);
        out.points.push_back(set[j]);
        out.combination.support.emplace_back(j, sol.x[j]);
        for (std::size_t i = 0; i < d; ++i)
            sum[i] += sol.x[j] * set[j][i];
    }
    for (std::size_t i = 0; i < d; ++i)
        sum[i] += out.anchor_weight * anchor[i];
    if (sum != y)
        throw std::logic_error("anchored reduction failed exact verification");
    out.fallback = out.indices.size() > d;
    return out;
}

PointSet extreme_points(const PointSet &set)
{
    if (set.empty())
        throw GeometryError("empty point set");
    const PointSet pts = set.distinct();
    PointSet out(set.dim());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        PointSet others(set.dim());
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i)
                others.push_back(pts[j]);
        if (others.empty() || !in_hull(pts[i], others))
            out.push_back(pts[i]);
    }
    return out;
}

bool AffineHull::contains(const Point &p) const
{
    if (p.size() != origin.size())
        return false;
    linalg::Matrix rows = basis;
    rows.push_back(subtract(p, origin));
    return linalg::rank(rows) == dim;
}

AffineHull affine_hull(const PointSet &set)
{
    if (set.empty())
        throw GeometryError("empty point set");
    AffineHull h;
    h.origin = set[0];
    linalg::Matrix diffs;
    for (std::size_t i = 1; i < set.size(); ++i)
        diffs.push_back(subtract(set[i], h.origin));
    for (std::size_t i : linalg::independent_rows(diffs))
        h.basis.push_back(diffs[i]);
    h.dim = h.basis.size();
    return h;
}

Point centroid(const PointSet &set)
{
    if (set.empty())
        throw GeometryError("empty point set");
    Point c(set.dim(), Scalar(0));
    for (const auto &p : set)
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] += p[i];
    const Scalar n(static_cast<long>(set.size()));
    for (auto &x : c)
        x /= n;
    return c;
}

std::size_t count_in(const Halfspace &h, const PointSet &set)
{
    const PointSet pts = set.distinct();
    return static_cast<std::size_t>(
        std::count_if(pts.begin(), pts.end(), [&](const Point &a) { return h.contains(a); }));
}

bool affinely_independent(const PointSet &set)
{
    linalg::Matrix rows;
    for (const auto &p : set) {
        Vector r = p;
        r.emplace_back(1);
        rows.push_back(std::move(r));
    }
    return linalg::rank(rows) == rows.size();
}

} // namespace qtv
