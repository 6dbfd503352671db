#include "qtverberg/engine.hpp"

#include <algorithm>
#include <set>

namespace qtv {

void Instance::validate() const
{
    if (m == 0 || k == 0)
        throw DiscreteSetError("m and k must be at least 1");
    if (!set.enumerable())
        throw DiscreteSetError("partitions need an enumerable set (lattice or lattice difference)");
    if (points.empty())
        throw GeometryError("instance has no points");
    if (points.dim() != set.dim())
        throw GeometryError("instance points do not match the set dimension");
    std::set<Point, LexLess> seen;
    for (const auto &p : points) {
        if (!set_contains(set, p))
            throw DiscreteSetError("instance point " + format_point(p) + " is not in S");
        if (!seen.insert(p).second)
            throw DiscreteSetError("instance point " + format_point(p) + " is repeated");
    }
}

std::string to_string(PartitionStatus s)
{
    switch (s) {
    case PartitionStatus::ok:
        return "ok";
    case PartitionStatus::no_partition_found:
        return "no_partition_found";
    case PartitionStatus::theorem_violation:
        return "theorem_violation";
    case PartitionStatus::verification_failure:
        return "verification_failure";
    }
    return "unknown";
}

WitnessSearch find_deep_witnesses(const PointSet &points, const DiscreteSetSpec &s, std::size_t threshold,
                                  std::size_t k)
{
    if (points.empty())
        throw GeometryError("witness search needs a nonempty point set");
    if (points.dim() != s.dim())
        throw GeometryError("point set does not match the set dimension");
    Box box;
    for (std::size_t i = 0; i < points.dim(); ++i) {
        Scalar lo = points[0][i];
        Scalar hi = points[0][i];
        for (const auto &p : points) {
            lo = std::min(lo, p[i]);
            hi = std::max(hi, p[i]);
        }
        box.lower.push_back(floor_of(lo));
        box.upper.push_back(ceil_of(hi));
    }

    WitnessSearch out;
    const std::size_t base_floor = std::max<std::size_t>(threshold, 1);
    // Candidates arrive in lexicographic order; a later candidate displaces a
    // kept one only if strictly deeper.
    for (const auto &c : enumerate_in_box(s, box)) {
        ++out.candidates_scanned;
        std::size_t floor = base_floor;
        if (k > 0 && out.witnesses.size() == k)
            floor = std::max(floor, out.witnesses.back().depth.depth + 1);
        auto r = depth_if_at_least(c, points, floor);
        if (!r)
            continue;
        auto pos = std::find_if(out.witnesses.begin(), out.witnesses.end(),
                                [&](const DeepWitness &w) { return w.depth.depth < r->depth; });
        out.witnesses.insert(pos, DeepWitness{c, std::move(*r)});
        if (out.witnesses.size() > k)
            out.witnesses.pop_back();
    }
    out.insufficient = out.witnesses.size() < k;
    return out;
}

namespace {

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool covers(const PointSet &targets, const PointSet &hull)
{
    return !hull.empty() &&
           std::all_of(targets.begin(), targets.end(), [&](const Point &t) { return in_hull(t, hull); });
}

PointSet lex_sorted(PointSet s)
{
    std::vector<Point> pts = s.points();
    std::sort(pts.begin(), pts.end(), LexLess{});
    return PointSet(s.dim(), std::move(pts));
}

} // namespace

ExtractedPart colorful_cover(const PointSet &targets, const PointSet &set, std::size_t anchor_rotation)
{
    if (targets.empty())
        throw GeometryError("colorful cover needs at least one target point");
    for (const auto &t : targets)
        if (!membership(t, set).inside())
            throw GeometryError("target " + format_point(t) + " is not in the hull of the set");

    const PointSet ext = lex_sorted(extreme_points(targets));
    ExtractedPart out;
    if (ext.size() == 1) {
        out.indices = caratheodory_reduce(ext[0], set).combination.indices();
        return out;
    }

    const Point anchor = anchor_rotation == 0 ? centroid(ext) : ext[(anchor_rotation - 1) % ext.size()];
    std::vector<std::size_t> chosen;
    for (const auto &y : ext) {
        AnchoredResult r = anchored_reduce(y, anchor, set);
        out.fallback = out.fallback || r.fallback;
        chosen.insert(chosen.end(), r.indices.begin(), r.indices.end());
    }
    out.indices = sorted_unique(std::move(chosen));
    if (covers(targets, set.subset(out.indices)))
        return out;

    // Plain Carathéodory per extreme point always covers, at up to n(d+1) points.
    chosen.clear();
    for (const auto &y : ext) {
        auto idx = caratheodory_reduce(y, set).combination.indices();
        chosen.insert(chosen.end(), idx.begin(), idx.end());
    }
    out.indices = sorted_unique(std::move(chosen));
    out.fallback = true;
    return out;
}

ExtractedPart extract_part(const PointSet &targets, const PointSet &remaining, std::size_t k,
                           std::size_t anchor_rotation)
{
    if (targets.empty())
        throw GeometryError("no target points to extract a part for");
    if (k == 1 && targets.size() == 1) {
        ExtractedPart out;
        out.indices = caratheodory_reduce(targets[0], remaining).combination.indices();
        return out;
    }
    return colorful_cover(targets, remaining, anchor_rotation);
}

PartitionOutcome tverberg_partition(const Instance &instance, const EngineOptions &opts)
{
    instance.validate();
    const PointSet &points = instance.points;
    const std::size_t d = points.dim();
    const std::size_t m = instance.m;
    const std::size_t k = instance.k;
    const std::size_t threshold = (m - 1) * k * d + 1;

    PartitionOutcome outcome;
    outcome.search = find_deep_witnesses(points, instance.set, threshold, k);
    if (outcome.search.insufficient) {
        const std::uint64_t bound = tverberg_upper_bound(instance.set, m, k, opts.bound_mode);
        if (points.size() >= bound) {
            outcome.status = PartitionStatus::theorem_violation;
            outcome.message = "found " + std::to_string(outcome.search.witnesses.size()) + " of " +
                              std::to_string(k) + " witnesses of depth >= " + std::to_string(threshold) +
                              " with " + std::to_string(points.size()) + " points, at or above the bound " +
                              std::to_string(bound);
        } else {
            outcome.status = PartitionStatus::no_partition_found;
            outcome.message = "fewer than " + std::to_string(k) + " points of S have depth >= " +
                              std::to_string(threshold);
        }
        return outcome;
    }

    PartitionResult result;
    result.stats.threshold = threshold;
    PointSet witnesses(d);
    for (const auto &w : outcome.search.witnesses) {
        witnesses.push_back(w.point);
        result.witnesses.push_back(w.point);
        result.stats.witness_depths.push_back(w.depth.depth);
    }
    const std::size_t rotations = k >= 2 ? extreme_points(witnesses).size() : 0;

    std::vector<std::size_t> remaining(points.size());
    for (std::size_t i = 0; i < remaining.size(); ++i)
        remaining[i] = i;

    for (std::size_t part = 1; part < m; ++part) {
        const PointSet remaining_set = points.subset(remaining);
        bool placed = false;
        for (std::size_t rotation = 0; rotation <= rotations && !placed; ++rotation) {
            ExtractedPart extracted = extract_part(witnesses, remaining_set, k, rotation);
            std::vector<bool> taken(remaining.size(), false);
            std::vector<std::size_t> chosen;
            for (std::size_t i : extracted.indices) {
                taken[i] = true;
                chosen.push_back(remaining[i]);
            }
            std::vector<std::size_t> rest;
            for (std::size_t i = 0; i < remaining.size(); ++i)
                if (!taken[i])
                    rest.push_back(remaining[i]);
            // Depth bookkeeping is re-verified rather than assumed.
            if (!covers(witnesses, points.subset(rest))) {
                ++result.stats.retries;
                continue;
            }
            result.parts.push_back(chosen);
            result.stats.fallback.push_back(extracted.fallback || rotation > 0);
            remaining = std::move(rest);
            placed = true;
        }
        if (!placed) {
            outcome.status = PartitionStatus::verification_failure;
            outcome.message = "part " + std::to_string(part) + " of " + std::to_string(m) +
                              ": witnesses left the hull of the remaining " + std::to_string(remaining.size()) +
                              " points after every extraction policy";
            return outcome;
        }
    }
    result.parts.push_back(remaining);

    for (const auto &part : result.parts) {
        const PointSet part_set = points.subset(part);
        std::vector<ConvexCombination> row;
        for (const auto &w : result.witnesses) {
            MembershipCertificate cert = membership(w, part_set);
            if (!cert.inside()) {
                outcome.status = PartitionStatus::verification_failure;
                outcome.message = "witness " + format_point(w) + " is not in the hull of an extracted part";
                return outcome;
            }
            for (auto &[idx, c] : cert.combination.support)
                idx = part[idx];
            row.push_back(std::move(cert.combination));
        }
        result.certificates.push_back(std::move(row));
        result.stats.part_sizes.push_back(part.size());
    }

    outcome.status = PartitionStatus::ok;
    outcome.result = std::move(result);
    return outcome;
}

PartitionOutcome radon_partition(const Instance &instance, const EngineOptions &opts)
{
    Instance copy = instance;
    copy.m = 2;
    return tverberg_partition(copy, opts);
}

} // namespace qtv
