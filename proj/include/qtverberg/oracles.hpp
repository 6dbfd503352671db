#pragma once

#include "qtverberg/discrete_sets.hpp"
#include "qtverberg/engine.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Brute-force ground truth for the engine's decisions. Every oracle takes a
// search-size cap; exceeding it throws CapExceeded rather than returning a
// verdict.
namespace qtv::oracles {

struct Caps {
    std::size_t depth_points = 14;
    std::uint64_t tverberg_partitions = 1000000;
    std::size_t hoffman_ground = 18;
    std::size_t helly_family = 12;
};

struct DepthReport {
    std::size_t depth = 0;
    std::uint64_t subsets_examined = 0;
};

struct TverbergReport {
    bool found = false;
    std::vector<std::vector<std::size_t>> parts;
    std::vector<Point> common_points;   // at least k points of S when found
    std::uint64_t partitions_examined = 0;
};

struct HoffmanReport {
    std::size_t max_size = 0;
    PointSet witness;
    std::uint64_t subsets_examined = 0;
};

struct HellyReport {
    bool hypothesis_holds = false;   // every subfamily of at most h members meets S in >= k points
    bool conclusion_holds = false;   // the whole family meets S in >= k points
    bool implication_holds = false;
    std::vector<std::size_t> violating_subfamily;   // when the hypothesis fails
    std::uint64_t subfamilies_examined = 0;
};

struct VerifyReport {
    bool ok = false;
    std::string reason;   // empty when ok
};

// Depth as |A| minus the largest B ⊆ A with p ∉ conv(B). A point is outside
// conv(B) exactly when an open half-space holds B and misses p, and the
// complement of that half-space is a closed half-space through p.
DepthReport brute_depth(const Point &p, const PointSet &set, const Caps &caps = {});

// Stirling number of the second kind, saturating at UINT64_MAX.
std::uint64_t partition_count(std::size_t n, std::size_t m);

// Exhaustive search over unordered partitions into m nonempty parts, in
// restricted-growth-string order (lexicographic in the block label of each
// point, first point always in block 0). Returns the first partition whose
// hulls share at least k points of S.
TverbergReport brute_tverberg(const PointSet &points, const DiscreteSetSpec &s, std::size_t m, std::size_t k,
                              const Caps &caps = {});

VerifyReport verify_partition(const PartitionResult &result, const Instance &instance);

HoffmanReport brute_hoffman_max(const DiscreteSetSpec &s, const Box &box, std::size_t k, const Caps &caps = {});

// The family {conv(U \ {u}) : u ∈ U}.
std::vector<PolytopeV> leave_one_out_family(const PointSet &u);

// Points of S in the intersection of the polytopes, lexicographically sorted.
std::vector<Point> common_points(const std::vector<PolytopeV> &family, const DiscreteSetSpec &s);

HellyReport brute_helly_check(const std::vector<PolytopeV> &family, const DiscreteSetSpec &s, std::size_t k,
                              std::size_t h, const Caps &caps = {});

} // namespace qtv::oracles
