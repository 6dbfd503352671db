#pragma once

#include "qtverberg/scalar.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace qtv {

// Ordered list of points sharing one ambient dimension. Duplicates are
// allowed here; operations that need distinct points say so.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dim) : dim_(dim) {}
    PointSet(std::size_t dim, std::vector<Point> points);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    const Point &operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point> &points() const { return points_; }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

    void push_back(Point p);
    PointSet subset(const std::vector<std::size_t> &indices) const;
    std::optional<std::size_t> index_of(const Point &p) const;
    bool contains(const Point &p) const { return index_of(p).has_value(); }

    // Same points with later duplicates removed (first occurrence kept).
    PointSet distinct() const;

    friend bool operator==(const PointSet &, const PointSet &) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Point> points_;
};

// Closed half-space {x : normal . x >= offset}.
struct Halfspace {
    Vector normal;
    Scalar offset;

    bool contains(const Point &p) const { return dot(normal, p) >= offset; }
    bool strictly_contains(const Point &p) const { return dot(normal, p) > offset; }
};

// Convex combination over a PointSet: pairs of (index, coefficient).
struct ConvexCombination {
    std::vector<std::pair<std::size_t, Scalar>> support;

    std::vector<std::size_t> indices() const;
    // True when coefficients are nonnegative, sum to one, and reproduce target.
    bool verifies(const Point &target, const PointSet &set) const;
};

enum class Verdict { inside, outside };

struct MembershipCertificate {
    Verdict verdict = Verdict::outside;
    ConvexCombination combination;   // verdict == inside
    Halfspace separator;             // verdict == outside; the set is on the >= side

    bool inside() const { return verdict == Verdict::inside; }
    bool verifies(const Point &p, const PointSet &set) const;
};

struct DepthResult {
    std::size_t depth = 0;
    // Closed half-space with the query point on its boundary holding exactly
    // `depth` points of the (deduplicated) reference set.
    Halfspace witness;
};

struct CaratheodoryResult {
    PointSet points;
    ConvexCombination combination;   // indices refer to the input set
};

struct AnchoredResult {
    PointSet points;
    std::vector<std::size_t> indices;   // into the input set
    ConvexCombination combination;      // over the input set, excluding the anchor
    Scalar anchor_weight;
    // Set when the reduction could not keep the support at d points.
    bool fallback = false;
};

struct AffineHull {
    Point origin;
    std::vector<Vector> basis;
    std::size_t dim = 0;

    bool contains(const Point &p) const;
};

// Hull membership by exact LP feasibility. The returned certificate always
// verifies; an internal inconsistency throws std::logic_error.
MembershipCertificate membership(const Point &p, const PointSet &set);

// Cheap membership test for hot loops; same answer as membership().inside().
bool in_hull(const Point &p, const PointSet &set);

// Carathéodory support: at most d + 1 affinely independent points of `set`
// whose hull contains p. Throws GeometryError if p is outside conv(set).
CaratheodoryResult caratheodory_reduce(const Point &p, const PointSet &set);

// Support B of `set` with y in conv(B + {anchor}). Maximizing the anchor
// weight over basic solutions keeps |B| <= d.
AnchoredResult anchored_reduce(const Point &y, const Point &anchor, const PointSet &set);

// Points of the set not in the hull of the remaining distinct points, in
// input order, duplicates collapsed.
PointSet extreme_points(const PointSet &set);

AffineHull affine_hull(const PointSet &set);

Point centroid(const PointSet &set);

// Half-space (Tukey) depth, exact. Duplicates in `set` are collapsed.
DepthResult depth(const Point &p, const PointSet &set);

// Exact depth if it is at least `floor`, nullopt otherwise. Stops as soon as a
// half-space with fewer than `floor` points is found.
std::optional<DepthResult> depth_if_at_least(const Point &p, const PointSet &set, std::size_t floor);

// Number of points of `set` (duplicates collapsed) in the closed half-space.
std::size_t count_in(const Halfspace &h, const PointSet &set);

bool affinely_independent(const PointSet &set);

} // namespace qtv
