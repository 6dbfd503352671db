#pragma once

#include "qtverberg/discrete_sets.hpp"
#include "qtverberg/harness.hpp"

#include <algorithm>
#include <initializer_list>
#include <vector>

namespace qtv::test {

inline PointSet pts(std::initializer_list<std::initializer_list<long>> coords)
{
    std::vector<Point> out;
    for (const auto &c : coords)
        out.push_back(make_point(c));
    const std::size_t dim = out.empty() ? 0 : out.front().size();
    return PointSet(dim, std::move(out));
}

inline Point pt(std::initializer_list<long> c) { return make_point(c); }

inline Scalar q(long num, long den) { return make_scalar(num, den); }

inline DiscreteSetSpec odd_integers()
{
    return DiscreteSetSpec::difference(LatticeBasis::standard(1), {LatticeBasis(1, {{Scalar(2)}})});
}

// Random distinct integer points in [-bound, bound]^dim, at most as many as the box holds.
inline PointSet random_points(harness::SplitMix64 &rng, std::size_t dim, std::size_t n, long bound)
{
    std::size_t capacity = 1;
    for (std::size_t i = 0; i < dim && capacity < n; ++i)
        capacity *= static_cast<std::size_t>(2 * bound + 1);
    n = std::min(n, capacity);
    PointSet out(dim);
    while (out.size() < n) {
        Point p;
        for (std::size_t i = 0; i < dim; ++i)
            p.push_back(Scalar(static_cast<long>(rng.below(2 * bound + 1)) - bound));
        if (!out.contains(p))
            out.push_back(std::move(p));
    }
    return out;
}

inline Point random_point(harness::SplitMix64 &rng, std::size_t dim, long bound)
{
    Point p;
    for (std::size_t i = 0; i < dim; ++i)
        p.push_back(Scalar(static_cast<long>(rng.below(2 * bound + 1)) - bound));
    return p;
}

} // namespace qtv::test
