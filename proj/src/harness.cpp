#include "qtverberg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <set>
#include <thread>

namespace qtv::harness {

void ExperimentConfig::validate() const
{
    if (!set.enumerable())
        throw DiscreteSetError("experiments need an enumerable set");
    if (m == 0 || k == 0)
        throw DiscreteSetError("m and k must be at least 1");
    if (n_points == 0)
        throw DiscreteSetError("n_points must be at least 1");
    if (trials == 0)
        throw DiscreteSetError("trials must be at least 1");
    if (box.dim() != set.dim())
        throw DiscreteSetError("box dimension does not match the set");
}

ExperimentConfig config_from_json(const io::json &j)
{
    if (!j.is_object())
        throw io::FormatError("a config must be a JSON object");
    ExperimentConfig c;
    c.set = io::spec_from_json(j.at("set"));
    if (j.contains("d") && j.at("d").get<std::size_t>() != c.set.dim())
        throw io::FormatError("config d does not match the set dimension");
    auto count = [&](const char *key, std::size_t fallback) {
        if (!j.contains(key))
            return fallback;
        const auto &v = j.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw io::FormatError(std::string("\"") + key + "\" must be a nonnegative integer");
        return v.get<std::size_t>();
    };
    c.m = count("m", 2);
    c.k = count("k", 1);
    c.n_points = count("n_points", 0);
    c.trials = count("trials", 1);
    if (!j.contains("box"))
        throw io::FormatError("config needs a \"box\"");
    const auto &box = j.at("box");
    if (box.is_number_integer() && box.get<long long>() < 1)
        throw io::FormatError("box bound must be at least 1");
    c.box = io::box_from_json(box, c.set.dim());
    if (j.contains("seed")) {
        const auto &s = j.at("seed");
        if (s.is_number_unsigned())
            c.seed = s.get<std::uint64_t>();
        else if (s.is_number_integer())
            c.seed = static_cast<std::uint64_t>(s.get<long long>());
        else
            throw io::FormatError("seed must be an integer");
    }
    c.oracle_validate = j.value("oracle_validate", false);
    if (j.contains("caps"))
        c.caps = io::caps_from_json(j.at("caps"));
    if (j.contains("bound_mode"))
        c.bound_mode = parse_bound_mode(j.at("bound_mode").get<std::string>());
    c.validate();
    return c;
}

io::json to_json(const ExperimentConfig &c)
{
    return {{"set", io::to_json(c.set)},
            {"m", c.m},
            {"k", c.k},
            {"n_points", c.n_points},
            {"box", io::to_json(c.box)},
            {"trials", c.trials},
            {"seed", c.seed},
            {"oracle_validate", c.oracle_validate},
            {"caps", io::to_json(c.caps)},
            {"bound_mode", to_string(c.bound_mode)}};
}

std::uint64_t SplitMix64::mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next()
{
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
        const std::uint64_t x = next();
        if (x < limit)
            return x % n;
    }
}

SplitMix64 trial_generator(std::uint64_t seed, std::size_t trial_index)
{
    return SplitMix64(SplitMix64::mix(seed + SplitMix64::mix(static_cast<std::uint64_t>(trial_index) + 1)));
}

Instance generate_instance(const ExperimentConfig &config, std::size_t trial_index)
{
    config.validate();
    return generate_instance(config, trial_index, enumerate_in_box(config.set, config.box));
}

Instance generate_instance(const ExperimentConfig &config, std::size_t trial_index,
                           const std::vector<Point> &ground_set)
{
    if (config.n_points > ground_set.size())
        throw DiscreteSetError("box holds only " + std::to_string(ground_set.size()) + " points of S, " +
                               std::to_string(config.n_points) + " requested");
    Instance inst;
    inst.set = config.set;
    inst.m = config.m;
    inst.k = config.k;
    inst.points = PointSet(config.set.dim());
    if (config.n_points == ground_set.size()) {
        for (const auto &p : ground_set)
            inst.points.push_back(p);
        return inst;
    }
    SplitMix64 rng = trial_generator(config.seed, trial_index);
    std::vector<bool> used(ground_set.size(), false);
    while (inst.points.size() < config.n_points) {
        const std::uint64_t i = rng.below(ground_set.size());
        if (used[i])
            continue;
        used[i] = true;
        inst.points.push_back(ground_set[i]);
    }
    return inst;
}

std::string instance_digest(const Instance &inst)
{
    std::string text = std::to_string(inst.m) + ";" + std::to_string(inst.k);
    for (const auto &p : inst.points) {
        text += ";";
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i)
                text += ",";
            text += format_scalar(p[i]);
        }
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

TrialRecord run_trial(const ExperimentConfig &config, std::size_t trial_index, const std::vector<Point> &ground_set)
{
    TrialRecord rec;
    rec.trial = trial_index;
    const auto start = std::chrono::steady_clock::now();
    try {
        const Instance inst = generate_instance(config, trial_index, ground_set);
        rec.digest = instance_digest(inst);
        const PartitionOutcome outcome = tverberg_partition(inst, EngineOptions{config.bound_mode});
        rec.status = to_string(outcome.status);
        rec.message = outcome.message;
        if (outcome.ok()) {
            const PartitionResult &r = *outcome.result;
            rec.part_sizes = r.stats.part_sizes;
            rec.witness_count = r.witnesses.size();
            if (!r.stats.witness_depths.empty())
                rec.min_witness_depth = *std::min_element(r.stats.witness_depths.begin(), r.stats.witness_depths.end());
            const oracles::VerifyReport check = oracles::verify_partition(r, inst);
            if (!check.ok) {
                rec.status = "verify_failed";
                rec.message = check.reason;
            }
        }
        if (config.oracle_validate) {
            try {
                const auto truth = oracles::brute_tverberg(inst.points, inst.set, inst.m, inst.k, config.caps);
                rec.oracle_agreement = outcome.ok() == truth.found;
            } catch (const CapExceeded &) {
                // over the cap: no verdict either way
            }
        }
    } catch (const std::exception &e) {
        rec.status = "error";
        rec.message = e.what();
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

ExperimentReport run_experiment(const ExperimentConfig &config, const RunOptions &opts)
{
    config.validate();
    const std::vector<Point> ground_set = enumerate_in_box(config.set, config.box);

    ExperimentReport report;
    report.records.resize(config.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t; (t = next.fetch_add(1)) < config.trials;)
            report.records[t] = run_trial(config, t, ground_set);
    };
    const std::size_t threads = std::clamp<std::size_t>(opts.threads, 1, config.trials);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }

    std::size_t successes = 0, none = 0, errors = 0, violations = 0, verify_failures = 0;
    std::size_t oracle_checked = 0, oracle_agreements = 0;
    std::optional<std::size_t> min_depth;
    std::size_t depth_sum = 0, depth_count = 0;
    for (const auto &r : report.records) {
        if (r.status == "ok")
            ++successes;
        else if (r.status == "no_partition_found")
            ++none;
        else if (r.status == "theorem_violation")
            ++violations;
        else if (r.status == "verify_failed" || r.status == "verification_failure")
            ++verify_failures;
        else
            ++errors;
        if (r.oracle_agreement) {
            ++oracle_checked;
            oracle_agreements += *r.oracle_agreement;
        }
        if (r.min_witness_depth) {
            min_depth = std::min(min_depth.value_or(*r.min_witness_depth), *r.min_witness_depth);
            depth_sum += *r.min_witness_depth;
            ++depth_count;
        }
    }

    io::json bounds{{"mode", to_string(config.bound_mode)},
                    {"threshold", (config.m - 1) * config.k * config.set.dim() + 1}};
    try {
        bounds["helly"] = helly_upper_bound(config.set, config.k, config.bound_mode);
        bounds["tverberg"] = tverberg_upper_bound(config.set, config.m, config.k, config.bound_mode);
    } catch (const std::exception &e) {
        bounds["error"] = e.what();
    }

    io::json summary{{"config", to_json(config)},
                     {"trials", config.trials},
                     {"successes", successes},
                     {"success_rate", static_cast<double>(successes) / static_cast<double>(config.trials)},
                     {"no_partition_found", none},
                     {"theorem_violations", violations},
                     {"verification_failures", verify_failures},
                     {"errors", errors},
                     {"oracle_checked", oracle_checked},
                     {"oracle_agreements", oracle_agreements},
                     {"bounds", bounds}};
    summary["min_witness_depth"] = min_depth ? io::json(*min_depth) : io::json(nullptr);
    summary["mean_min_witness_depth"] =
        depth_count ? io::json(static_cast<double>(depth_sum) / static_cast<double>(depth_count)) : io::json(nullptr);
    report.summary = std::move(summary);
    return report;
}

void write_csv(std::ostream &out, const std::vector<TrialRecord> &records, bool include_timing)
{
    out << "trial,digest,status,part_sizes,witness_count,min_witness_depth,oracle_agreement";
    if (include_timing)
        out << ",wall_ms";
    out << '\n';
    for (const auto &r : records) {
        std::string sizes;
        for (std::size_t i = 0; i < r.part_sizes.size(); ++i)
            sizes += (i ? ";" : "") + std::to_string(r.part_sizes[i]);
        out << r.trial << ',' << r.digest << ',' << r.status << ',' << sizes << ',' << r.witness_count << ','
            << (r.min_witness_depth ? std::to_string(*r.min_witness_depth) : "") << ','
            << (r.oracle_agreement ? (*r.oracle_agreement ? "true" : "false") : "");
        if (include_timing) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
            out << ',' << buf;
        }
        out << '\n';
    }
}

} // namespace qtv::harness
