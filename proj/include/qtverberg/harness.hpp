#pragma once

#include "qtverberg/engine.hpp"
#include "qtverberg/json_io.hpp"
#include "qtverberg/oracles.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qtv::harness {

struct ExperimentConfig {
    DiscreteSetSpec set;
    std::size_t m = 2;
    std::size_t k = 1;
    std::size_t n_points = 1;
    Box box;   // sampling box; the config's "box": B means [-B, B]^d
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    bool oracle_validate = false;
    oracles::Caps caps;
    BoundMode bound_mode = BoundMode::paper;

    void validate() const;
};

ExperimentConfig config_from_json(const io::json &j);
io::json to_json(const ExperimentConfig &c);

// SplitMix64: state advances by 0x9E3779B97F4A7C15 and each output is the
// advanced state passed through the standard finalizer.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    std::uint64_t next();
    // Uniform in [0, n) by rejection of the biased top range.
    std::uint64_t below(std::uint64_t n);

    static std::uint64_t mix(std::uint64_t z);

private:
    std::uint64_t state_;
};

// Generator for one trial: state = mix(seed + mix(trial_index + 1)).
SplitMix64 trial_generator(std::uint64_t seed, std::size_t trial_index);

// n_points distinct points of S ∩ box, drawn uniformly one at a time with
// duplicates redrawn. When n_points equals |S ∩ box| the whole set is returned
// in lexicographic order. Throws DiscreteSetError if the box is too small.
Instance generate_instance(const ExperimentConfig &config, std::size_t trial_index);

// Same, reusing a precomputed lexicographically sorted S ∩ box.
Instance generate_instance(const ExperimentConfig &config, std::size_t trial_index,
                           const std::vector<Point> &ground_set);

// 64-bit FNV-1a over the canonical text of (m, k, points), as 16 hex digits.
std::string instance_digest(const Instance &inst);

struct TrialRecord {
    std::size_t trial = 0;
    std::string digest;
    // Engine status ("ok", "no_partition_found", "theorem_violation",
    // "verification_failure"), "verify_failed" when the independent check
    // rejects an engine result, or "error" for an exception.
    std::string status;
    std::vector<std::size_t> part_sizes;
    std::size_t witness_count = 0;
    std::optional<std::size_t> min_witness_depth;
    std::optional<bool> oracle_agreement;   // empty when not checked or over cap
    double wall_ms = 0;
    std::string message;
};

struct RunOptions {
    std::size_t threads = 1;
};

struct ExperimentReport {
    std::vector<TrialRecord> records;   // ordered by trial index
    io::json summary;
};

TrialRecord run_trial(const ExperimentConfig &config, std::size_t trial_index, const std::vector<Point> &ground_set);

ExperimentReport run_experiment(const ExperimentConfig &config, const RunOptions &opts = {});

// Header: trial,digest,status,part_sizes,witness_count,min_witness_depth,
// oracle_agreement; wall_ms is appended only when include_timing is set.
void write_csv(std::ostream &out, const std::vector<TrialRecord> &records, bool include_timing = false);

} // namespace qtv::harness
