#include "helpers.hpp"
#include "qtverberg/harness.hpp"
#include "qtverberg/json_io.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace qtv;
using namespace qtv::test;
using io::json;

namespace {

harness::ExperimentConfig z2_config(std::size_t m, std::size_t k, std::size_t n, long lo, long hi,
                                    std::size_t trials, std::uint64_t seed)
{
    harness::ExperimentConfig c;
    c.set = DiscreteSetSpec::integer_lattice(2);
    c.m = m;
    c.k = k;
    c.n_points = n;
    c.box = Box::cube(2, lo, hi);
    c.trials = trials;
    c.seed = seed;
    return c;
}

std::string csv_of(const harness::ExperimentReport &r)
{
    std::ostringstream out;
    harness::write_csv(out, r.records);
    return out.str();
}

} // namespace

TEST_CASE("splitmix64 reference values")
{
    // Published SplitMix64 outputs for seed 0.
    harness::SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
    harness::SplitMix64 small(7);
    for (int i = 0; i < 1000; ++i)
        CHECK(small.below(3) < 3);
}

TEST_CASE("generate_instance")
{
    const auto config = z2_config(3, 1, 25, -20, 20, 1, 99);
    const Instance a = harness::generate_instance(config, 4);
    const Instance b = harness::generate_instance(config, 4);
    CHECK(a.points == b.points);
    CHECK(a.points.size() == 25);
    CHECK_NOTHROW(a.validate());
    CHECK_FALSE(harness::generate_instance(config, 5).points == a.points);
    CHECK(harness::instance_digest(a) == harness::instance_digest(b));
    CHECK(harness::instance_digest(a).size() == 16);

    // the whole box when forced
    const auto full = harness::generate_instance(z2_config(2, 1, 4, 0, 1, 1, 0), 0);
    CHECK(full.points == pts({{0, 0}, {0, 1}, {1, 0}, {1, 1}}));

    harness::ExperimentConfig odd;
    odd.set = odd_integers();
    odd.box = Box::cube(1, -3, 3);
    odd.n_points = 4;
    CHECK(harness::generate_instance(odd, 0).points == pts({{-3}, {-1}, {1}, {3}}));
    odd.n_points = 5;
    CHECK_THROWS_AS(harness::generate_instance(odd, 0), DiscreteSetError);
}

TEST_CASE("the unit square experiment never succeeds")
{
    auto config = z2_config(2, 1, 4, 0, 1, 3, 1);
    config.oracle_validate = true;
    const auto report = harness::run_experiment(config);
    CHECK(report.summary["success_rate"].get<double>() == 0.0);
    CHECK(report.summary["no_partition_found"].get<std::size_t>() == 3);
    CHECK(report.summary["oracle_agreements"].get<std::size_t>() == 3);
    CHECK(report.summary["theorem_violations"].get<std::size_t>() == 0);
}

TEST_CASE("experiments are byte-identical across reruns and thread counts")
{
    auto config = z2_config(2, 1, 9, -6, 6, 12, 2024);
    config.oracle_validate = true;
    const auto one = harness::run_experiment(config, {1});
    const auto again = harness::run_experiment(config, {1});
    const auto threaded = harness::run_experiment(config, {3});
    CHECK(csv_of(one) == csv_of(again));
    CHECK(csv_of(one) == csv_of(threaded));
    CHECK(one.summary.dump() == threaded.summary.dump());
    CHECK(one.summary["successes"].get<std::size_t>() == 12);
    CHECK(one.summary["oracle_agreements"].get<std::size_t>() == 12);

    const std::string csv = csv_of(one);
    CHECK(csv.rfind("trial,digest,status,part_sizes,witness_count,min_witness_depth,oracle_agreement\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
}

TEST_CASE("per-trial errors are recorded without aborting the batch")
{
    // n_points exceeds the box: every trial records an error
    harness::ExperimentConfig config = z2_config(2, 1, 5, 0, 1, 2, 0);
    const auto report = harness::run_experiment(config);
    REQUIRE(report.records.size() == 2);
    CHECK(report.records[0].status == "error");
    CHECK(report.summary["errors"].get<std::size_t>() == 2);
}

TEST_CASE("config parsing")
{
    const json j = json::parse(R"({"set": {"dim": 2, "variant": "lattice"}, "m": 3, "k": 1, "n_points": 25,
                                   "box": 20, "trials": 5, "seed": 18446744073709551615,
                                   "oracle_validate": false, "caps": {"depth_points": 10},
                                   "bound_mode": "best"})");
    const auto c = harness::config_from_json(j);
    CHECK(c.m == 3);
    CHECK(c.box.lower == std::vector<Integer>{-20, -20});
    CHECK(c.seed == UINT64_MAX);
    CHECK(c.caps.depth_points == 10);
    CHECK(c.bound_mode == BoundMode::best);

    json bad = j;
    bad["trials"] = 0;
    CHECK_THROWS(harness::config_from_json(bad));
    bad = j;
    bad["box"] = 0;
    CHECK_THROWS(harness::config_from_json(bad));
    bad = j;
    bad["caps"] = {{"nonsense", 1}};
    CHECK_THROWS(harness::config_from_json(bad));
}

TEST_CASE("JSON round trips")
{
    const json spec = json::parse(R"({"dim": 2, "variant": "difference", "basis": [[1, 0], ["0/1", "1"]],
                                      "sublattices": [[[2, 0], [0, 2]]]})");
    const auto s = io::spec_from_json(spec);
    CHECK(s.variant() == DiscreteSetSpec::Variant::difference);
    CHECK(io::spec_from_json(io::to_json(s)).sublattices().size() == 1);
    CHECK(io::to_json(s)["basis"][0][0] == "1/1");

    const auto mixed = io::spec_from_json(json::parse(R"({"variant": "mixed", "a": 2, "b": 1})"));
    CHECK(mixed.dim() == 3);
    CHECK_THROWS_AS(io::spec_from_json(json::parse(R"({"dim": 2, "variant": "torus"})")), io::FormatError);
    CHECK_THROWS_AS(io::spec_from_json(json::parse(R"({"dim": 2, "basis": [[1, 0, 0]]})")), io::FormatError);

    const json inst_json = json::parse(R"({"set": {"dim": 1}, "m": 2, "k": 1, "points": [["0/1"], [1], ["2"]]})");
    const Instance inst = io::instance_from_json(inst_json);
    CHECK(inst.points == pts({{0}, {1}, {2}}));
    const auto outcome = tverberg_partition(inst);
    const json result = io::to_json(outcome);
    CHECK(result["status"] == "ok");
    CHECK(result["witnesses"] == json::parse(R"([["1/1"]])"));
    const auto parsed = io::result_from_json(result);
    CHECK(parsed.parts == outcome.result->parts);
    CHECK(oracles::verify_partition(parsed, inst).ok);

    CHECK(io::scalar_from_json(json("-6/4")) == q(-3, 2));
    CHECK_THROWS_AS(io::scalar_from_json(json(1.5)), io::FormatError);
    CHECK(io::box_from_json(json::parse("[[0, 1], [-2, 3]]"), 2).upper == std::vector<Integer>{1, 3});
    CHECK_THROWS_AS(io::box_from_json(json::parse("[[2, 1]]"), 1), io::FormatError);
}
