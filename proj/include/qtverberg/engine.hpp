#pragma once

#include "qtverberg/discrete_sets.hpp"
#include "qtverberg/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qtv {

// Distinct points of S to be split into m parts whose hulls share k points of S.
struct Instance {
    DiscreteSetSpec set;
    PointSet points;
    std::size_t m = 2;
    std::size_t k = 1;

    // Throws DiscreteSetError / GeometryError if points repeat, leave S, or
    // m, k are zero.
    void validate() const;
};

struct DeepWitness {
    Point point;
    DepthResult depth;
};

struct WitnessSearch {
    std::vector<DeepWitness> witnesses;   // deepest first, ties lexicographic
    bool insufficient = false;            // fewer than k candidates met the threshold
    std::size_t candidates_scanned = 0;
};

struct PartitionStats {
    std::vector<std::size_t> part_sizes;
    std::vector<std::size_t> witness_depths;
    std::size_t threshold = 0;
    // One flag per extracted part (parts 1..m-1): a reduction needed its
    // fallback path or the extraction needed a retry.
    std::vector<bool> fallback;
    std::size_t retries = 0;
};

struct PartitionResult {
    std::vector<std::vector<std::size_t>> parts;   // indices into the instance points
    std::vector<Point> witnesses;
    // certificates[i][j] proves witnesses[j] ∈ conv(parts[i]); indices refer
    // to the instance points.
    std::vector<std::vector<ConvexCombination>> certificates;
    PartitionStats stats;
};

enum class PartitionStatus { ok, no_partition_found, theorem_violation, verification_failure };

std::string to_string(PartitionStatus s);

struct PartitionOutcome {
    PartitionStatus status = PartitionStatus::no_partition_found;
    std::optional<PartitionResult> result;
    WitnessSearch search;
    std::string message;

    bool ok() const { return status == PartitionStatus::ok; }
};

struct EngineOptions {
    // Bound used to decide whether missing witnesses contradict the theorem.
    BoundMode bound_mode = BoundMode::paper;
};

struct ExtractedPart {
    std::vector<std::size_t> indices;   // into the `remaining` set passed in
    bool fallback = false;
};

// The k deepest points of S ∩ conv(points) with depth >= threshold.
WitnessSearch find_deep_witnesses(const PointSet &points, const DiscreteSetSpec &s, std::size_t threshold,
                                  std::size_t k);

// B ⊆ set with conv(B) ⊇ targets. Each extreme point of the targets is
// reduced against the anchor (the centroid of the extreme points by default,
// or the extreme point with index `anchor_rotation - 1`), giving |B| <= n*d.
// Falls back to per-vertex Carathéodory supports if the union fails
// verification.
ExtractedPart colorful_cover(const PointSet &targets, const PointSet &set, std::size_t anchor_rotation = 0);

ExtractedPart extract_part(const PointSet &targets, const PointSet &remaining, std::size_t k,
                           std::size_t anchor_rotation = 0);

PartitionOutcome tverberg_partition(const Instance &instance, const EngineOptions &opts = {});

// m = 2 special case.
PartitionOutcome radon_partition(const Instance &instance, const EngineOptions &opts = {});

} // namespace qtv
