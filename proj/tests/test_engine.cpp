#include "helpers.hpp"
#include "qtverberg/json_io.hpp"
#include "qtverberg/oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qtv;
using namespace qtv::test;

namespace {

Instance make_instance(DiscreteSetSpec s, PointSet points, std::size_t m, std::size_t k)
{
    Instance inst;
    inst.set = std::move(s);
    inst.points = std::move(points);
    inst.m = m;
    inst.k = k;
    return inst;
}

std::vector<std::vector<std::size_t>> sorted_parts(std::vector<std::vector<std::size_t>> parts)
{
    for (auto &p : parts)
        std::sort(p.begin(), p.end());
    std::sort(parts.begin(), parts.end());
    return parts;
}

// Soundness invariants checked directly, without the oracle module.
void check_sound(const Instance &inst, const PartitionResult &r)
{
    REQUIRE(r.parts.size() == inst.m);
    std::vector<int> seen(inst.points.size(), 0);
    for (const auto &part : r.parts) {
        CHECK_FALSE(part.empty());
        for (std::size_t i : part)
            ++seen[i];
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    CHECK(r.witnesses.size() >= inst.k);
    for (std::size_t j = 0; j < r.witnesses.size(); ++j) {
        CHECK(set_contains(inst.set, r.witnesses[j]));
        for (std::size_t l = 0; l < j; ++l)
            CHECK(r.witnesses[j] != r.witnesses[l]);
    }
    REQUIRE(r.certificates.size() == r.parts.size());
    for (std::size_t i = 0; i < r.parts.size(); ++i) {
        REQUIRE(r.certificates[i].size() == r.witnesses.size());
        for (std::size_t j = 0; j < r.witnesses.size(); ++j) {
            const auto &cert = r.certificates[i][j];
            CHECK(cert.verifies(r.witnesses[j], inst.points));
            for (std::size_t idx : cert.indices())
                CHECK(std::find(r.parts[i].begin(), r.parts[i].end(), idx) != r.parts[i].end());
        }
    }
}

} // namespace

TEST_CASE("find_deep_witnesses examples")
{
    const auto z1 = DiscreteSetSpec::integer_lattice(1);
    auto w = find_deep_witnesses(pts({{0}, {1}, {2}, {3}, {4}}), z1, 2, 1);
    REQUIRE(w.witnesses.size() == 1);
    CHECK_FALSE(w.insufficient);
    CHECK(w.witnesses[0].point == pt({2}));
    CHECK(w.witnesses[0].depth.depth == 3);

    const auto z2 = DiscreteSetSpec::integer_lattice(2);
    auto square = find_deep_witnesses(pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), z2, 1, 1);
    REQUIRE(square.witnesses.size() == 1);
    CHECK(square.witnesses[0].point == pt({0, 0}));
    CHECK(square.witnesses[0].depth.depth == 1);
    CHECK(find_deep_witnesses(pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), z2, 2, 1).insufficient);

    // ties go to the lexicographically smaller point
    auto two = find_deep_witnesses(pts({{0}, {1}, {2}, {3}}), z1, 1, 2);
    REQUIRE(two.witnesses.size() == 2);
    CHECK(two.witnesses[0].point == pt({1}));
    CHECK(two.witnesses[1].point == pt({2}));
}

TEST_CASE("deep witnesses are the deepest candidates")
{
    harness::SplitMix64 rng(3);
    const auto z2 = DiscreteSetSpec::integer_lattice(2);
    for (int trial = 0; trial < 20; ++trial) {
        const PointSet a = random_points(rng, 2, 8 + rng.below(6), 4);
        const std::size_t k = 1 + rng.below(3);
        const auto w = find_deep_witnesses(a, z2, 1, k);
        std::vector<std::pair<std::size_t, Point>> all;
        for (const auto &c : enumerate_in_polytope(z2, {a}))
            all.emplace_back(depth(c, a).depth, c);
        std::stable_sort(all.begin(), all.end(), [](const auto &x, const auto &y) { return x.first > y.first; });
        REQUIRE(w.witnesses.size() == std::min(k, all.size()));
        for (std::size_t i = 0; i < w.witnesses.size(); ++i) {
            CHECK(w.witnesses[i].point == all[i].second);
            CHECK(w.witnesses[i].depth.depth == all[i].first);
        }
    }
}

TEST_CASE("colorful_cover")
{
    SUBCASE("targets inside the set")
    {
        const PointSet p = pts({{0, 0}, {2, 0}, {0, 2}});
        const auto r = colorful_cover(p, p);
        const PointSet b = p.subset(r.indices);
        for (const auto &t : p)
            CHECK(in_hull(t, b));
        CHECK(r.indices.size() <= 3 * 2);
    }
    SUBCASE("segment inside a rectangle")
    {
        const PointSet a = pts({{-1, -1}, {-1, 1}, {2, -1}, {2, 1}});
        const auto r = colorful_cover(pts({{0, 0}, {1, 0}}), a);
        CHECK(r.indices.size() <= 4);
        const PointSet b = a.subset(r.indices);
        CHECK(in_hull(pt({0, 0}), b));
        CHECK(in_hull(pt({1, 0}), b));
    }
    SUBCASE("single target uses Carathéodory")
    {
        const PointSet a = pts({{-1, -1}, {-1, 1}, {1, -1}, {1, 1}});
        const auto r = colorful_cover(pts({{0, 0}}), a);
        CHECK(r.indices.size() <= 3);
        CHECK(in_hull(pt({0, 0}), a.subset(r.indices)));
    }
    SUBCASE("target outside is an error")
    {
        CHECK_THROWS_AS(colorful_cover(pts({{5, 5}}), pts({{0, 0}, {1, 0}})), GeometryError);
    }
    SUBCASE("random covers meet the n*d target")
    {
        harness::SplitMix64 rng(31);
        const auto z2 = DiscreteSetSpec::integer_lattice(2);
        for (int trial = 0; trial < 60; ++trial) {
            const PointSet a = random_points(rng, 2, 10, 5);
            const auto inside = enumerate_in_polytope(z2, {a});
            if (inside.size() < 2)
                continue;
            PointSet targets(2);
            targets.push_back(inside[rng.below(inside.size())]);
            const Point second = inside[rng.below(inside.size())];
            if (!targets.contains(second))
                targets.push_back(second);
            const auto r = colorful_cover(targets, a);
            const PointSet b = a.subset(r.indices);
            for (const auto &t : targets)
                CHECK(in_hull(t, b));
            const std::size_t n = extreme_points(targets).size();
            CHECK(r.indices.size() <= n * 3);
            if (!r.fallback)
                CHECK(r.indices.size() <= std::max<std::size_t>(n * 2, 3));
        }
    }
}

TEST_CASE("extract_part")
{
    const PointSet remaining = pts({{0}, {2}, {5}});
    const auto r = extract_part(pts({{1}}), remaining, 1);
    CHECK(remaining.subset(r.indices) == pts({{0}, {2}}));

    const PointSet square = pts({{-1, -1}, {-1, 1}, {1, -1}, {1, 1}});
    const auto c = extract_part(pts({{0, 0}}), square, 1);
    CHECK(c.indices.size() <= 3);
    CHECK(in_hull(pt({0, 0}), square.subset(c.indices)));

    const PointSet big = pts({{-3, -3}, {-3, 3}, {3, -3}, {3, 3}, {0, 4}, {4, 0}});
    const auto two = extract_part(pts({{0, 0}, {1, 1}}), big, 2);
    CHECK(two.indices.size() <= 6);
    CHECK(in_hull(pt({0, 0}), big.subset(two.indices)));
    CHECK(in_hull(pt({1, 1}), big.subset(two.indices)));
}

TEST_CASE("tverberg and radon examples")
{
    const auto z1 = DiscreteSetSpec::integer_lattice(1);
    const auto z2 = DiscreteSetSpec::integer_lattice(2);

    const Instance line = make_instance(z1, pts({{0}, {1}, {2}}), 2, 1);
    for (const auto &outcome : {tverberg_partition(line), radon_partition(line)}) {
        REQUIRE(outcome.ok());
        CHECK(sorted_parts(outcome.result->parts) == std::vector<std::vector<std::size_t>>{{0, 2}, {1}});
        CHECK(outcome.result->witnesses == std::vector<Point>{pt({1})});
        check_sound(line, *outcome.result);
    }

    const Instance square = make_instance(z2, pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), 2, 1);
    const auto none = radon_partition(square);
    CHECK(none.status == PartitionStatus::no_partition_found);
    CHECK_FALSE(oracles::brute_tverberg(square.points, z2, 2, 1).found);
}

TEST_CASE("m = 1 is the whole set with the deepest point")
{
    const auto z2 = DiscreteSetSpec::integer_lattice(2);
    const Instance inst = make_instance(z2, pts({{0, 0}, {4, 0}, {0, 4}}), 1, 2);
    const auto outcome = tverberg_partition(inst);
    REQUIRE(outcome.ok());
    CHECK(outcome.result->parts.size() == 1);
    CHECK(outcome.result->parts[0].size() == 3);
    CHECK(outcome.result->witnesses.size() == 2);
    check_sound(inst, *outcome.result);
}

TEST_CASE("instance validation")
{
    const auto z2 = DiscreteSetSpec::integer_lattice(2);
    CHECK_THROWS_AS(tverberg_partition(make_instance(z2, pts({{0, 0}, {0, 0}}), 2, 1)), DiscreteSetError);
    CHECK_THROWS_AS(tverberg_partition(make_instance(z2, PointSet(2, {{q(1, 2), Scalar(0)}}), 2, 1)),
                    DiscreteSetError);
    CHECK_THROWS_AS(tverberg_partition(make_instance(z2, pts({{0, 0}}), 0, 1)), DiscreteSetError);
    CHECK_THROWS_AS(tverberg_partition(make_instance(DiscreteSetSpec::mixed(2, 0), pts({{0, 0}}), 2, 1)),
                    DiscreteSetError);
}

TEST_CASE("partition soundness and completeness at the bound over random instances")
{
    harness::SplitMix64 rng(97);
    struct Shape {
        DiscreteSetSpec s;
        std::size_t m, k;
        long box;
    };
    const std::vector<Shape> shapes{
        {DiscreteSetSpec::integer_lattice(1), 3, 2, 10},
        {DiscreteSetSpec::integer_lattice(2), 2, 1, 6},
        {DiscreteSetSpec::integer_lattice(2), 3, 1, 8},
        {DiscreteSetSpec::integer_lattice(2), 2, 3, 8},
        {odd_integers(), 2, 2, 30},
    };
    for (const auto &shape : shapes) {
        const std::size_t n = tverberg_upper_bound(shape.s, shape.m, shape.k, BoundMode::paper);
        harness::ExperimentConfig config;
        config.set = shape.s;
        config.m = shape.m;
        config.k = shape.k;
        config.n_points = n;
        config.box = Box::cube(shape.s.dim(), -shape.box, shape.box);
        config.seed = rng.next();
        const auto ground_set = enumerate_in_box(config.set, config.box);
        for (std::size_t t = 0; t < 8; ++t) {
            const Instance inst = harness::generate_instance(config, t, ground_set);
            const auto outcome = tverberg_partition(inst);
            REQUIRE_MESSAGE(outcome.ok(), outcome.message);
            check_sound(inst, *outcome.result);
            CHECK(oracles::verify_partition(*outcome.result, inst).ok);
        }
    }
}

TEST_CASE("depth accounting after each extraction")
{
    harness::SplitMix64 rng(61);
    const auto z2 = DiscreteSetSpec::integer_lattice(2);
    for (std::size_t k = 1; k <= 2; ++k) {
        const std::size_t m = k == 1 ? 3 : 2;
        harness::ExperimentConfig config;
        config.set = z2;
        config.m = m;
        config.k = k;
        config.n_points = tverberg_upper_bound(z2, m, k, BoundMode::paper);
        config.box = Box::cube(2, -8, 8);
        config.seed = rng.next();
        for (std::size_t t = 0; t < 10; ++t) {
            const Instance inst = harness::generate_instance(config, t);
            const auto outcome = tverberg_partition(inst);
            REQUIRE(outcome.ok());
            const auto &r = *outcome.result;
            // Replay the extraction order: parts 0..m-2 were removed in turn.
            std::vector<std::size_t> remaining(inst.points.size());
            for (std::size_t i = 0; i < remaining.size(); ++i)
                remaining[i] = i;
            std::vector<std::size_t> prev;
            for (const auto &w : r.witnesses)
                prev.push_back(depth(w, inst.points).depth);
            for (std::size_t part = 0; part + 1 < m; ++part) {
                const auto &taken = r.parts[part];
                const std::size_t budget = k == 1 ? 2 : k * 2;
                if (!r.stats.fallback[part]) {
                    if (k == 1)
                        CHECK(affinely_independent(inst.points.subset(taken)));
                    CHECK(taken.size() <= (k == 1 ? 3 : k * 2));
                }
                std::erase_if(remaining, [&](std::size_t i) {
                    return std::find(taken.begin(), taken.end(), i) != taken.end();
                });
                for (std::size_t j = 0; j < r.witnesses.size(); ++j) {
                    const std::size_t now = depth(r.witnesses[j], inst.points.subset(remaining)).depth;
                    if (!r.stats.fallback[part])
                        CHECK(now + budget >= prev[j]);
                    CHECK(now >= 1);
                    prev[j] = now;
                }
            }
        }
    }
}

TEST_CASE("engine output is deterministic")
{
    const auto z2 = DiscreteSetSpec::integer_lattice(2);
    harness::ExperimentConfig config;
    config.set = z2;
    config.m = 3;
    config.k = 1;
    config.n_points = 25;
    config.box = Box::cube(2, -20, 20);
    config.seed = 12345;
    for (std::size_t t = 0; t < 3; ++t) {
        const Instance inst = harness::generate_instance(config, t);
        const auto a = io::to_json(tverberg_partition(inst)).dump();
        const auto b = io::to_json(tverberg_partition(inst)).dump();
        CHECK(a == b);
    }
}

TEST_CASE("an oracle-negative instance never yields an engine success")
{
    harness::SplitMix64 rng(71);
    const auto z2 = DiscreteSetSpec::integer_lattice(2);
    std::size_t negatives = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 4 + rng.below(4);
        const Instance inst = make_instance(z2, random_points(rng, 2, n, 3), 2, 1 + rng.below(2));
        const auto truth = oracles::brute_tverberg(inst.points, z2, inst.m, inst.k);
        const auto outcome = tverberg_partition(inst);
        if (!truth.found) {
            ++negatives;
            CHECK_FALSE(outcome.ok());
        }
        if (outcome.ok())
            CHECK(truth.found);
    }
    CHECK(negatives > 0);
}
