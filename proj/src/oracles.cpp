#include "qtverberg/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <set>

namespace qtv::oracles {

namespace {

// Calls visit(indices) for every size-`r` subset of {0..n-1} in lexicographic
// order; stops early when visit returns true. Returns the number visited.
std::uint64_t for_each_combination(std::size_t n, std::size_t r,
                                   const std::function<bool(const std::vector<std::size_t> &)> &visit)
{
    if (r > n)
        return 0;
    std::vector<std::size_t> c(r);
    for (std::size_t i = 0; i < r; ++i)
        c[i] = i;
    std::uint64_t visited = 0;
    for (;;) {
        ++visited;
        if (visit(c))
            return visited;
        std::size_t k = r;
        while (k > 0 && c[k - 1] == n - r + k - 1)
            --k;
        if (k == 0)
            return visited;
        ++c[k - 1];
        for (std::size_t j = k; j < r; ++j)
            c[j] = c[j - 1] + 1;
    }
}

// Integer box containing the intersection of the bounding boxes of `sets`;
// nullopt when that intersection has no integer point in some coordinate.
std::optional<Box> intersect_bounds(const std::vector<const PointSet *> &sets, std::size_t dim)
{
    Box box;
    for (std::size_t i = 0; i < dim; ++i) {
        std::optional<Scalar> lo, hi;
        for (const PointSet *s : sets) {
            Scalar mn = (*s)[0][i];
            Scalar mx = (*s)[0][i];
            for (const auto &p : *s) {
                mn = std::min(mn, p[i]);
                mx = std::max(mx, p[i]);
            }
            if (!lo || mn > *lo)
                lo = mn;
            if (!hi || mx < *hi)
                hi = mx;
        }
        Integer l = ceil_of(*lo);
        Integer h = floor_of(*hi);
        if (l > h)
            return std::nullopt;
        box.lower.push_back(l);
        box.upper.push_back(h);
    }
    return box;
}

std::vector<Point> common_points_of(const std::vector<const PointSet *> &sets, const DiscreteSetSpec &s)
{
    if (sets.empty())
        throw GeometryError("intersection of an empty family");
    // Lattice points in the box are only candidates; non-lattice boxes for a
    // general basis are handled by the lattice scan inside enumerate_in_box.
    auto box = intersect_bounds(sets, s.dim());
    std::vector<Point> out;
    if (!box)
        return out;
    for (auto &c : enumerate_in_box(s, *box))
        if (std::all_of(sets.begin(), sets.end(), [&](const PointSet *set) { return in_hull(c, *set); }))
            out.push_back(std::move(c));
    return out;
}

} // namespace

DepthReport brute_depth(const Point &p, const PointSet &set, const Caps &caps)
{
    if (p.size() != set.dim())
        throw GeometryError("dimension mismatch in brute_depth");
    if (set.dim() > 4)
        throw CapExceeded("brute_depth supports dimension at most 4");
    const PointSet pts = set.distinct();
    const std::size_t n = pts.size();
    if (n > caps.depth_points)
        throw CapExceeded("brute_depth over " + std::to_string(n) + " points exceeds cap " +
                          std::to_string(caps.depth_points));
    DepthReport report;
    // removed = t: look for B of size n - t whose hull misses p.
    for (std::size_t removed = 0; removed <= n; ++removed) {
        if (removed == n) {
            report.depth = n;
            return report;
        }
        bool found = false;
        report.subsets_examined += for_each_combination(n, n - removed, [&](const std::vector<std::size_t> &keep) {
            return found = !in_hull(p, pts.subset(keep));
        });
        if (found) {
            report.depth = removed;
            return report;
        }
    }
    return report;
}

std::uint64_t partition_count(std::size_t n, std::size_t m)
{
    constexpr auto saturated = std::numeric_limits<std::uint64_t>::max();
    // S(i, j) = j S(i-1, j) + S(i-1, j-1)
    std::vector<std::uint64_t> row(m + 1, 0);
    row[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = std::min(i, m); j >= 1; --j) {
            std::uint64_t a;
            if (__builtin_mul_overflow(row[j], j, &a) || __builtin_add_overflow(a, row[j - 1], &row[j]))
                row[j] = saturated;
        }
        row[0] = 0;
    }
    return row[m];
}

TverbergReport brute_tverberg(const PointSet &points, const DiscreteSetSpec &s, std::size_t m, std::size_t k,
                              const Caps &caps)
{
    if (m == 0 || k == 0)
        throw DiscreteSetError("m and k must be at least 1");
    const std::size_t n = points.size();
    const std::uint64_t total = partition_count(n, m);
    if (total > caps.tverberg_partitions)
        throw CapExceeded(std::to_string(total) + " partitions exceed cap " +
                          std::to_string(caps.tverberg_partitions));
    TverbergReport report;
    if (total == 0)
        return report;

    std::vector<std::size_t> label(n, 0);
    std::function<bool(std::size_t, std::size_t)> descend = [&](std::size_t i, std::size_t blocks) -> bool {
        if (n - i < m - blocks)
            return false;
        if (i == n) {
            ++report.partitions_examined;
            std::vector<std::vector<std::size_t>> parts(m);
            for (std::size_t j = 0; j < n; ++j)
                parts[label[j]].push_back(j);
            std::vector<PointSet> sets;
            for (const auto &part : parts)
                sets.push_back(points.subset(part));
            std::vector<const PointSet *> ptrs;
            for (const auto &set : sets)
                ptrs.push_back(&set);
            auto common = common_points_of(ptrs, s);
            if (common.size() < k)
                return false;
            report.found = true;
            report.parts = std::move(parts);
            report.common_points = std::move(common);
            return true;
        }
        for (std::size_t b = 0; b <= blocks && b < m; ++b) {
            label[i] = b;
            if (descend(i + 1, b == blocks ? blocks + 1 : blocks))
                return true;
        }
        return false;
    };
    descend(1, 1);
    return report;
}

VerifyReport verify_partition(const PartitionResult &result, const Instance &instance)
{
    auto fail = [](std::string why) { return VerifyReport{false, std::move(why)}; };
    const std::size_t n = instance.points.size();
    if (result.parts.size() != instance.m)
        return fail("part_count: expected " + std::to_string(instance.m) + " parts, got " +
                    std::to_string(result.parts.size()));
    std::vector<int> owner(n, -1);
    for (std::size_t i = 0; i < result.parts.size(); ++i) {
        if (result.parts[i].empty())
            return fail("empty_part: part " + std::to_string(i));
        for (std::size_t idx : result.parts[i]) {
            if (idx >= n)
                return fail("index_out_of_range: " + std::to_string(idx));
            if (owner[idx] != -1)
                return fail("disjointness: point " + std::to_string(idx) + " is in parts " +
                            std::to_string(owner[idx]) + " and " + std::to_string(i));
            owner[idx] = static_cast<int>(i);
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (owner[j] == -1)
            return fail("coverage: point " + std::to_string(j) + " is in no part");
    if (result.witnesses.size() < instance.k)
        return fail("witness_count: expected at least " + std::to_string(instance.k) + ", got " +
                    std::to_string(result.witnesses.size()));
    std::set<Point, LexLess> seen;
    for (const auto &w : result.witnesses) {
        if (w.size() != instance.set.dim())
            return fail("witness_not_in_set: wrong dimension");
        if (!seen.insert(w).second)
            return fail("witness_duplicate: " + format_point(w));
        if (!set_contains(instance.set, w))
            return fail("witness_not_in_set: " + format_point(w));
    }
    for (std::size_t i = 0; i < result.parts.size(); ++i) {
        const PointSet part = instance.points.subset(result.parts[i]);
        for (const auto &w : result.witnesses)
            if (!membership(w, part).inside())
                return fail("witness_not_in_hull: " + format_point(w) + " vs part " + std::to_string(i));
    }
    return {true, {}};
}

HoffmanReport brute_hoffman_max(const DiscreteSetSpec &s, const Box &box, std::size_t k, const Caps &caps)
{
    if (k == 0)
        throw GeometryError("k must be positive");
    const std::vector<Point> ground_set = enumerate_in_box(s, box);
    const std::size_t n = ground_set.size();
    if (n > caps.hoffman_ground)
        throw CapExceeded("Hoffman search over " + std::to_string(n) + " points exceeds cap " +
                          std::to_string(caps.hoffman_ground));
    HoffmanReport report;
    report.witness = PointSet(s.dim());
    const PointSet all(s.dim(), ground_set);
    if (n < 2) {
        report.max_size = n;
        report.witness = all;
        return report;
    }
    for (std::size_t size = n; size >= 2; --size) {
        bool found = false;
        report.subsets_examined += for_each_combination(n, size, [&](const std::vector<std::size_t> &idx) {
            PointSet candidate = all.subset(idx);
            if (ground::is_k_hoffman(ground_set, candidate, k)) {
                report.witness = std::move(candidate);
                found = true;
            }
            return found;
        });
        if (found) {
            report.max_size = size;
            return report;
        }
    }
    return report;
}

std::vector<PolytopeV> leave_one_out_family(const PointSet &u)
{
    if (u.size() < 2)
        throw GeometryError("leave-one-out family needs at least two points");
    std::vector<PolytopeV> family;
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < u.size(); ++j)
            if (j != i)
                keep.push_back(j);
        family.push_back(PolytopeV{u.subset(keep)});
    }
    return family;
}

std::vector<Point> common_points(const std::vector<PolytopeV> &family, const DiscreteSetSpec &s)
{
    std::vector<const PointSet *> ptrs;
    for (const auto &p : family) {
        if (p.vertices.empty())
            throw GeometryError("polytope without vertices");
        ptrs.push_back(&p.vertices);
    }
    return common_points_of(ptrs, s);
}

HellyReport brute_helly_check(const std::vector<PolytopeV> &family, const DiscreteSetSpec &s, std::size_t k,
                              std::size_t h, const Caps &caps)
{
    if (family.empty())
        throw GeometryError("Helly check needs a nonempty family");
    if (family.size() > caps.helly_family)
        throw CapExceeded("family of " + std::to_string(family.size()) + " exceeds cap " +
                          std::to_string(caps.helly_family));
    if (h == 0 || k == 0)
        throw GeometryError("h and k must be positive");
    HellyReport report;
    // Intersections only shrink as subfamilies grow, so testing the largest
    // allowed size covers all smaller ones.
    const std::size_t size = std::min(h, family.size());
    report.hypothesis_holds = true;
    report.subfamilies_examined = for_each_combination(family.size(), size, [&](const std::vector<std::size_t> &idx) {
        std::vector<PolytopeV> sub;
        for (std::size_t i : idx)
            sub.push_back(family[i]);
        if (common_points(sub, s).size() >= k)
            return false;
        report.hypothesis_holds = false;
        report.violating_subfamily = idx;
        return true;
    });
    report.conclusion_holds = common_points(family, s).size() >= k;
    report.implication_holds = !report.hypothesis_holds || report.conclusion_holds;
    return report;
}

} // namespace qtv::oracles
