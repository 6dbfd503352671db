// Command-line front end: JSON on stdout, a short human summary on stderr.
// Exit codes: 0 verdict reached, 1 usage or input error, 2 cap exceeded or a
// failed verification.

#include "qtverberg/harness.hpp"
#include "qtverberg/json_io.hpp"
#include "qtverberg/oracles.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace qtv;
using io::json;

namespace {

constexpr int exit_usage = 1;
constexpr int exit_failure = 2;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void emit(const json &j) { std::cout << j.dump(2) << '\n'; }

// "(1,2)", "[1,2]", "1,2" or "1/2,3": comma-separated rationals.
Point parse_point_arg(std::string text)
{
    std::erase_if(text, [](char c) { return c == '(' || c == ')' || c == '[' || c == ']' || c == ' ' || c == '"'; });
    if (text.empty())
        throw UsageError("empty point");
    Point p;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        p.push_back(parse_scalar(text.substr(start, comma - start)));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return p;
}

// Either a bare list of points or an object with a "points" field.
PointSet read_points(const std::string &path, std::size_t dim = 0)
{
    json j = io::read_json_file(path);
    if (j.is_object())
        j = j.at("points");
    return io::points_from_json(j, dim);
}

DiscreteSetSpec read_spec(const std::string &path)
{
    json j = io::read_json_file(path);
    // An instance or config file also carries a set.
    if (j.is_object() && j.contains("set"))
        j = j.at("set");
    return io::spec_from_json(j);
}

// "B" for [-B,B]^d, "lo:hi" for a cube, "lo:hi,lo:hi,..." per coordinate, or
// any JSON box form.
Box parse_box_arg(const std::string &text, std::size_t dim)
{
    if (text.empty())
        throw UsageError("--box is required");
    if (text.front() == '{' || text.front() == '[')
        return io::box_from_json(json::parse(text), dim);
    std::vector<std::string> pieces;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        pieces.push_back(text.substr(start, comma - start));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    json pairs = json::array();
    for (const auto &piece : pieces) {
        const std::size_t colon = piece.find(':');
        if (colon == std::string::npos) {
            if (pieces.size() != 1)
                throw UsageError("box coordinates must be lo:hi");
            return io::box_from_json(json(piece), dim);
        }
        pairs.push_back({piece.substr(0, colon), piece.substr(colon + 1)});
    }
    if (pairs.size() == 1 && dim > 1)
        for (std::size_t i = 1; i < dim; ++i)
            pairs.push_back(pairs[0]);
    return io::box_from_json(pairs, dim);
}

std::vector<PolytopeV> read_family(const std::string &path, std::size_t dim)
{
    json j = io::read_json_file(path);
    if (j.is_object())
        j = j.at("family");
    if (!j.is_array())
        throw UsageError("a family must be a list of vertex lists");
    std::vector<PolytopeV> family;
    for (const auto &poly : j)
        family.push_back(PolytopeV{io::points_from_json(poly, dim)});
    return family;
}

int report_partition(const Instance &inst, const PartitionOutcome &outcome)
{
    json out = io::to_json(outcome);
    int code = 0;
    if (outcome.ok()) {
        const auto check = oracles::verify_partition(*outcome.result, inst);
        out["verified"] = check.ok;
        if (!check.ok) {
            out["verify_reason"] = check.reason;
            code = exit_failure;
        }
        std::cerr << "partition into " << inst.m << " parts with " << outcome.result->witnesses.size()
                  << " common point(s) of S" << (check.ok ? ", verified" : ", FAILED verification: " + check.reason)
                  << '\n';
    } else {
        std::cerr << to_string(outcome.status) << ": " << outcome.message << '\n';
        if (outcome.status != PartitionStatus::no_partition_found)
            code = exit_failure;
    }
    emit(out);
    return code;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Quantitative Tverberg partitions over lattices and lattice differences"};
    app.require_subcommand(1);
    std::function<int()> action;

    std::string bound_mode = "paper";

    // tverberg / radon
    std::string instance_path;
    auto *tverberg = app.add_subcommand("tverberg", "Partition an instance into m parts sharing k points of S");
    tverberg->add_option("instance", instance_path, "Instance JSON")->required();
    tverberg->add_option("--bound-mode", bound_mode, "Bound deciding theorem violations (paper|best)");
    tverberg->callback([&] {
        action = [&] {
            const Instance inst = io::instance_from_json(io::read_json_file(instance_path));
            return report_partition(inst, tverberg_partition(inst, EngineOptions{parse_bound_mode(bound_mode)}));
        };
    });
    auto *radon = app.add_subcommand("radon", "Two-part partition (m is taken as 2)");
    radon->add_option("instance", instance_path, "Instance JSON")->required();
    radon->add_option("--bound-mode", bound_mode, "Bound deciding theorem violations (paper|best)");
    radon->callback([&] {
        action = [&] {
            Instance inst = io::instance_from_json(io::read_json_file(instance_path));
            inst.m = 2;
            return report_partition(inst, radon_partition(inst, EngineOptions{parse_bound_mode(bound_mode)}));
        };
    });

    // depth
    std::string point_arg, points_path;
    auto *depth_cmd = app.add_subcommand("depth", "Exact half-space depth of a point");
    depth_cmd->add_option("point", point_arg, "Point, e.g. 0,0 or \"(1/2,3)\"")->required();
    depth_cmd->add_option("points", points_path, "Points JSON")->required();
    depth_cmd->callback([&] {
        action = [&] {
            const Point p = parse_point_arg(point_arg);
            const PointSet a = read_points(points_path, p.size());
            const DepthResult r = depth(p, a);
            json out = io::to_json(r);
            out["point"] = io::to_json(p);
            std::cerr << "depth of " << format_point(p) << " in " << a.size() << " points: " << r.depth << '\n';
            emit(out);
            return 0;
        };
    });

    // hollow-search
    std::string set_path, box_arg, mode_arg = "exhaustive";
    std::size_t k = 1, m = 2, cap = 20;
    auto *hollow = app.add_subcommand("hollow-search", "Largest (or a maximal) k-hollow subset of S in a box");
    hollow->add_option("set", set_path, "Set spec JSON")->required();
    hollow->add_option("--box", box_arg, "B, lo:hi, lo:hi,lo:hi,... or JSON")->required();
    hollow->add_option("--k", k, "Quantitative parameter k")->check(CLI::PositiveNumber);
    hollow->add_option("--mode", mode_arg, "exhaustive|greedy");
    hollow->add_option("--cap", cap, "Largest ground set for exhaustive search");
    hollow->callback([&] {
        action = [&] {
            const DiscreteSetSpec s = read_spec(set_path);
            const Box box = parse_box_arg(box_arg, s.dim());
            const HollowCertificate cert = hollow_search(s, box, k, parse_search_mode(mode_arg), {cap});
            json out = io::to_json(cert);
            out["mode"] = mode_arg;
            out["box"] = io::to_json(box);
            std::cerr << mode_arg << " " << k << "-hollow set of size " << cert.set.size() << '\n';
            emit(out);
            return 0;
        };
    });

    // hoffman-check
    auto *hoffman = app.add_subcommand("hoffman-check", "Test whether points form a k-Hoffman and k-hollow set");
    hoffman->add_option("set", set_path, "Set spec JSON")->required();
    hoffman->add_option("points", points_path, "Points JSON")->required();
    hoffman->add_option("--k", k, "Quantitative parameter k")->check(CLI::PositiveNumber);
    hoffman->callback([&] {
        action = [&] {
            const DiscreteSetSpec s = read_spec(set_path);
            const PointSet p = read_points(points_path, s.dim());
            const bool is_hoffman = is_k_hoffman(p, s, k);
            auto [count, cert] = count_nonvertex(s, p, k);
            json out{{"k", k},
                     {"k_hoffman", is_hoffman},
                     {"k_hollow", cert.hollow()},
                     {"nonvertex_count", count},
                     {"certificate", io::to_json(cert)}};
            std::cerr << p.size() << " points: " << (is_hoffman ? "" : "not ") << k << "-Hoffman, "
                      << (cert.hollow() ? "" : "not ") << k << "-hollow\n";
            emit(out);
            return 0;
        };
    });

    // bounds
    auto *bounds = app.add_subcommand("bounds", "Helly and Tverberg upper bounds for S");
    bounds->add_option("set", set_path, "Set spec JSON")->required();
    bounds->add_option("--m", m, "Number of parts")->check(CLI::PositiveNumber);
    bounds->add_option("--k", k, "Quantitative parameter k")->check(CLI::PositiveNumber);
    bounds->add_option("--mode", bound_mode, "paper|best");
    bounds->callback([&] {
        action = [&] {
            const DiscreteSetSpec s = read_spec(set_path);
            const BoundMode mode = parse_bound_mode(bound_mode);
            const std::uint64_t h = helly_upper_bound(s, k, mode);
            json out{{"set", s.describe()}, {"m", m}, {"k", k}, {"mode", to_string(mode)}, {"helly", h}};
            if (s.enumerable()) {
                const std::uint64_t t = tverberg_upper_bound(s, m, k, mode);
                out["tverberg"] = t;
                std::cerr << "helly <= " << h << ", tverberg(m=" << m << ", k=" << k << ") <= " << t << '\n';
            } else {
                std::cerr << "helly <= " << h << '\n';
            }
            emit(out);
            return 0;
        };
    });

    // oracle subcommands
    oracles::Caps caps;
    auto *oracle = app.add_subcommand("oracle", "Brute-force ground truth");
    oracle->require_subcommand(1);

    auto *brute_depth = oracle->add_subcommand("brute-depth", "Depth by subset enumeration");
    brute_depth->add_option("point", point_arg, "Point")->required();
    brute_depth->add_option("points", points_path, "Points JSON")->required();
    brute_depth->add_option("--cap", caps.depth_points, "Largest point set");
    brute_depth->callback([&] {
        action = [&] {
            const Point p = parse_point_arg(point_arg);
            const auto r = oracles::brute_depth(p, read_points(points_path, p.size()), caps);
            std::cerr << "brute depth of " << format_point(p) << ": " << r.depth << '\n';
            emit(io::to_json(r));
            return 0;
        };
    });

    auto *brute_tverberg = oracle->add_subcommand("brute-tverberg", "Search every partition of an instance");
    brute_tverberg->add_option("instance", instance_path, "Instance JSON")->required();
    brute_tverberg->add_option("--cap", caps.tverberg_partitions, "Largest number of partitions");
    brute_tverberg->callback([&] {
        action = [&] {
            const Instance inst = io::instance_from_json(io::read_json_file(instance_path));
            inst.validate();
            const auto r = oracles::brute_tverberg(inst.points, inst.set, inst.m, inst.k, caps);
            std::cerr << (r.found ? "partition found" : "no partition") << " after " << r.partitions_examined
                      << " partition(s)\n";
            emit(io::to_json(r));
            return 0;
        };
    });

    auto *hoffman_max = oracle->add_subcommand("hoffman-max", "Largest k-Hoffman subset of S in a box");
    hoffman_max->add_option("set", set_path, "Set spec JSON")->required();
    hoffman_max->add_option("--box", box_arg, "Box")->required();
    hoffman_max->add_option("--k", k, "Quantitative parameter k")->check(CLI::PositiveNumber);
    hoffman_max->add_option("--cap", caps.hoffman_ground, "Largest ground set");
    hoffman_max->callback([&] {
        action = [&] {
            const DiscreteSetSpec s = read_spec(set_path);
            const auto r = oracles::brute_hoffman_max(s, parse_box_arg(box_arg, s.dim()), k, caps);
            std::cerr << "largest " << k << "-Hoffman set: " << r.max_size << '\n';
            emit(io::to_json(r));
            return 0;
        };
    });

    std::string family_path, leave_one_out_path;
    std::size_t h = 1;
    auto *helly = oracle->add_subcommand("helly-check", "Check the Helly implication for a family of polytopes");
    helly->add_option("set", set_path, "Set spec JSON")->required();
    helly->add_option("--family", family_path, "JSON list of vertex lists");
    helly->add_option("--leave-one-out", leave_one_out_path, "Points U; uses {conv(U \\ {u})}");
    helly->add_option("--k", k, "Quantitative parameter k")->check(CLI::PositiveNumber);
    helly->add_option("--size", h, "Largest subfamily size h")->required()->check(CLI::PositiveNumber);
    helly->add_option("--cap", caps.helly_family, "Largest family");
    helly->callback([&] {
        action = [&] {
            const DiscreteSetSpec s = read_spec(set_path);
            if (family_path.empty() == leave_one_out_path.empty())
                throw UsageError("give exactly one of --family or --leave-one-out");
            const auto family = family_path.empty()
                                    ? oracles::leave_one_out_family(read_points(leave_one_out_path, s.dim()))
                                    : read_family(family_path, s.dim());
            const auto r = oracles::brute_helly_check(family, s, k, h, caps);
            std::cerr << "hypothesis " << (r.hypothesis_holds ? "holds" : "fails") << ", conclusion "
                      << (r.conclusion_holds ? "holds" : "fails") << '\n';
            emit(io::to_json(r));
            return 0;
        };
    });

    std::string result_path;
    auto *verify = oracle->add_subcommand("verify", "Independently check a partition result");
    verify->add_option("instance", instance_path, "Instance JSON")->required();
    verify->add_option("result", result_path, "Result JSON")->required();
    verify->callback([&] {
        action = [&] {
            const Instance inst = io::instance_from_json(io::read_json_file(instance_path));
            const auto r = oracles::verify_partition(io::result_from_json(io::read_json_file(result_path)), inst);
            std::cerr << (r.ok ? "valid" : "INVALID: " + r.reason) << '\n';
            emit(io::to_json(r));
            return r.ok ? 0 : exit_failure;
        };
    });

    // experiment
    std::string config_path, csv_path;
    std::size_t threads = 1;
    bool timing = false;
    auto *experiment = app.add_subcommand("experiment", "Run seeded trials and summarize");
    experiment->add_option("config", config_path, "Config JSON")->required();
    experiment->add_option("--csv", csv_path, "Write per-trial records here");
    experiment->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    experiment->add_flag("--timing", timing, "Add a wall_ms column to the CSV (not reproducible)");
    experiment->callback([&] {
        action = [&] {
            const auto config = harness::config_from_json(io::read_json_file(config_path));
            const auto report = harness::run_experiment(config, {threads});
            if (!csv_path.empty()) {
                std::ofstream out(csv_path);
                if (!out)
                    throw UsageError("cannot write " + csv_path);
                harness::write_csv(out, report.records, timing);
            }
            const json &s = report.summary;
            std::cerr << s["successes"] << "/" << s["trials"] << " succeeded, " << s["theorem_violations"]
                      << " theorem violation(s), " << s["verification_failures"] << " verification failure(s)\n";
            emit(s);
            const bool bad = s["theorem_violations"].get<std::size_t>() > 0 ||
                             s["verification_failures"].get<std::size_t>() > 0;
            return bad ? exit_failure : 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        return action();
    } catch (const CapExceeded &e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return exit_failure;
    } catch (const std::logic_error &e) {
        // invalid_argument (bad input) derives from logic_error; anything else
        // is an internal consistency failure.
        if (dynamic_cast<const std::invalid_argument *>(&e)) {
            std::cerr << "error: " << e.what() << '\n';
            return exit_usage;
        }
        std::cerr << "verification failure: " << e.what() << '\n';
        return exit_failure;
    } catch (const json::exception &e) {
        std::cerr << "error: malformed JSON input: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
}
