#include "qtverberg/json_io.hpp"

#include <fstream>

namespace qtv::io {

namespace {

std::size_t size_field(const json &j, const char *key)
{
    if (!j.contains(key))
        throw FormatError(std::string("missing field \"") + key + "\"");
    const json &v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw FormatError(std::string("field \"") + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

Integer integer_from_json(const json &j)
{
    Scalar v = scalar_from_json(j);
    if (!is_integer(v))
        throw FormatError("expected an integer, got " + format_scalar(v));
    return v.get_num();
}

LatticeBasis basis_from_json(const json &j, std::size_t dim)
{
    if (!j.is_array())
        throw FormatError("a basis must be a list of vectors");
    std::vector<Vector> vectors;
    for (const auto &v : j)
        vectors.push_back(point_from_json(v, dim));
    return LatticeBasis(dim, std::move(vectors));
}

json basis_to_json(const LatticeBasis &b)
{
    json out = json::array();
    for (const auto &v : b.vectors())
        out.push_back(to_json(v));
    return out;
}

json indices_to_json(const std::vector<std::size_t> &v) { return json(v); }

} // namespace

json to_json(const Scalar &v) { return format_scalar(v); }

json to_json(const Point &p)
{
    json out = json::array();
    for (const auto &c : p)
        out.push_back(to_json(c));
    return out;
}

json to_json(const PointSet &s)
{
    json out = json::array();
    for (const auto &p : s)
        out.push_back(to_json(p));
    return out;
}

json to_json(const Halfspace &h) { return {{"normal", to_json(h.normal)}, {"offset", to_json(h.offset)}}; }

json to_json(const ConvexCombination &c)
{
    json out = json::array();
    for (const auto &[idx, coef] : c.support)
        out.push_back({{"index", idx}, {"coefficient", to_json(coef)}});
    return out;
}

json to_json(const MembershipCertificate &c)
{
    if (c.inside())
        return {{"verdict", "inside"}, {"combination", to_json(c.combination)}};
    return {{"verdict", "outside"}, {"separator", to_json(c.separator)}};
}

json to_json(const DepthResult &d) { return {{"depth", d.depth}, {"halfspace", to_json(d.witness)}}; }

json to_json(const DiscreteSetSpec &s)
{
    json out{{"dim", s.dim()}};
    switch (s.variant()) {
    case DiscreteSetSpec::Variant::lattice:
        out["variant"] = "lattice";
        out["basis"] = basis_to_json(s.basis());
        break;
    case DiscreteSetSpec::Variant::difference: {
        out["variant"] = "difference";
        out["basis"] = basis_to_json(s.basis());
        json subs = json::array();
        for (const auto &l : s.sublattices())
            subs.push_back(basis_to_json(l));
        out["sublattices"] = subs;
        break;
    }
    case DiscreteSetSpec::Variant::mixed:
        out["variant"] = "mixed";
        out["a"] = s.integer_dims();
        out["b"] = s.real_dims();
        break;
    }
    return out;
}

json to_json(const Box &b)
{
    json lo = json::array(), hi = json::array();
    auto integer = [](const Integer &v) { return v.fits_slong_p() ? json(v.get_si()) : json(v.get_str()); };
    for (const auto &v : b.lower)
        lo.push_back(integer(v));
    for (const auto &v : b.upper)
        hi.push_back(integer(v));
    return {{"lower", lo}, {"upper", hi}};
}

json to_json(const HollowCertificate &c)
{
    json nonvertex = json::array();
    for (const auto &p : c.nonvertex_points)
        nonvertex.push_back(to_json(p));
    return {{"size", c.set.size()},       {"k", c.k}, {"points", to_json(c.set)},
            {"nonvertex_points", nonvertex}, {"hollow", c.hollow()}};
}

json to_json(const Instance &inst)
{
    return {{"set", to_json(inst.set)}, {"m", inst.m}, {"k", inst.k}, {"points", to_json(inst.points)}};
}

json to_json(const PartitionOutcome &outcome)
{
    json out;
    switch (outcome.status) {
    case PartitionStatus::ok:
    case PartitionStatus::no_partition_found:
        out["status"] = to_string(outcome.status);
        break;
    default:
        out["status"] = "error";
        break;
    }
    out["detail"] = to_string(outcome.status);
    if (!outcome.message.empty())
        out["message"] = outcome.message;

    json stats{{"candidates_scanned", outcome.search.candidates_scanned},
               {"witnesses_found", outcome.search.witnesses.size()}};
    if (!outcome.result) {
        out["parts"] = json::array();
        out["witnesses"] = json::array();
        out["certificates"] = json::array();
        out["stats"] = stats;
        return out;
    }
    const PartitionResult &r = *outcome.result;
    json parts = json::array();
    for (const auto &p : r.parts)
        parts.push_back(indices_to_json(p));
    json witnesses = json::array();
    for (const auto &w : r.witnesses)
        witnesses.push_back(to_json(w));
    json certs = json::array();
    for (const auto &row : r.certificates) {
        json part = json::array();
        for (const auto &c : row)
            part.push_back(to_json(c));
        certs.push_back(part);
    }
    out["parts"] = parts;
    out["witnesses"] = witnesses;
    out["certificates"] = certs;
    stats["threshold"] = r.stats.threshold;
    stats["part_sizes"] = r.stats.part_sizes;
    stats["witness_depths"] = r.stats.witness_depths;
    stats["fallback"] = r.stats.fallback;
    stats["retries"] = r.stats.retries;
    out["stats"] = stats;
    return out;
}

json to_json(const oracles::DepthReport &r)
{
    return {{"depth", r.depth}, {"subsets_examined", r.subsets_examined}};
}

json to_json(const oracles::TverbergReport &r)
{
    json parts = json::array();
    for (const auto &p : r.parts)
        parts.push_back(indices_to_json(p));
    json common = json::array();
    for (const auto &p : r.common_points)
        common.push_back(to_json(p));
    return {{"found", r.found},
            {"parts", parts},
            {"common_points", common},
            {"partitions_examined", r.partitions_examined}};
}

json to_json(const oracles::HoffmanReport &r)
{
    return {{"max_size", r.max_size}, {"witness", to_json(r.witness)}, {"subsets_examined", r.subsets_examined}};
}

json to_json(const oracles::HellyReport &r)
{
    return {{"hypothesis_holds", r.hypothesis_holds},
            {"conclusion_holds", r.conclusion_holds},
            {"implication_holds", r.implication_holds},
            {"violating_subfamily", r.violating_subfamily},
            {"subfamilies_examined", r.subfamilies_examined}};
}

json to_json(const oracles::VerifyReport &r)
{
    json out{{"ok", r.ok}};
    if (!r.ok)
        out["reason"] = r.reason;
    return out;
}

json to_json(const oracles::Caps &c)
{
    return {{"depth_points", c.depth_points},
            {"tverberg_partitions", c.tverberg_partitions},
            {"hoffman_ground", c.hoffman_ground},
            {"helly_family", c.helly_family}};
}

Scalar scalar_from_json(const json &j)
{
    try {
        if (j.is_number_integer())
            return Scalar(std::to_string(j.get<long long>()));
        if (j.is_string())
            return parse_scalar(j.get<std::string>());
    } catch (const GeometryError &e) {
        throw FormatError(e.what());
    }
    throw FormatError("expected a rational \"p/q\" string or an integer, got " + j.dump());
}

Point point_from_json(const json &j, std::size_t dim)
{
    if (!j.is_array())
        throw FormatError("a point must be a list of coordinates, got " + j.dump());
    if (j.size() != dim)
        throw FormatError("point " + j.dump() + " has " + std::to_string(j.size()) + " coordinates, expected " +
                          std::to_string(dim));
    Point p;
    for (const auto &c : j)
        p.push_back(scalar_from_json(c));
    return p;
}

PointSet points_from_json(const json &j, std::size_t dim)
{
    if (!j.is_array())
        throw FormatError("a point list must be a JSON array");
    if (dim == 0) {
        if (j.empty() || !j[0].is_array() || j[0].empty())
            throw FormatError("cannot infer the dimension of the point list");
        dim = j[0].size();
    }
    PointSet out(dim);
    for (const auto &p : j)
        out.push_back(point_from_json(p, dim));
    return out;
}

DiscreteSetSpec spec_from_json(const json &j)
{
    if (!j.is_object())
        throw FormatError("a set spec must be a JSON object");
    const std::string variant = j.value("variant", "lattice");
    if (variant == "mixed") {
        const std::size_t a = size_field(j, "a");
        const std::size_t b = size_field(j, "b");
        if (j.contains("dim") && size_field(j, "dim") != a + b)
            throw FormatError("mixed set: dim must equal a + b");
        return DiscreteSetSpec::mixed(a, b);
    }
    const std::size_t dim = size_field(j, "dim");
    if (dim == 0)
        throw FormatError("dim must be positive");
    LatticeBasis basis = j.contains("basis") ? basis_from_json(j.at("basis"), dim) : LatticeBasis::standard(dim);
    if (variant == "lattice")
        return DiscreteSetSpec::lattice(std::move(basis));
    if (variant == "difference") {
        if (!j.contains("sublattices") || !j.at("sublattices").is_array())
            throw FormatError("difference set needs a \"sublattices\" list");
        std::vector<LatticeBasis> subs;
        for (const auto &l : j.at("sublattices"))
            subs.push_back(basis_from_json(l, dim));
        return DiscreteSetSpec::difference(std::move(basis), std::move(subs));
    }
    throw FormatError("unknown variant \"" + variant + "\" (expected lattice, difference or mixed)");
}

Box box_from_json(const json &j, std::size_t dim)
{
    // Accepted: B (the cube [-B, B]^d), {"lower": [...], "upper": [...]},
    // or [[lo, hi], ...] per coordinate.
    Box box;
    if (j.is_number_integer() || j.is_string()) {
        Integer b = integer_from_json(j);
        if (b < 0)
            throw FormatError("box bound must be nonnegative");
        box.lower.assign(dim, -b);
        box.upper.assign(dim, b);
    } else if (j.is_object()) {
        for (const auto &v : j.at("lower"))
            box.lower.push_back(integer_from_json(v));
        for (const auto &v : j.at("upper"))
            box.upper.push_back(integer_from_json(v));
    } else if (j.is_array()) {
        for (const auto &pair : j) {
            if (!pair.is_array() || pair.size() != 2)
                throw FormatError("box coordinates must be [lo, hi] pairs");
            box.lower.push_back(integer_from_json(pair[0]));
            box.upper.push_back(integer_from_json(pair[1]));
        }
    } else {
        throw FormatError("unrecognised box " + j.dump());
    }
    if (box.lower.size() != dim || box.upper.size() != dim)
        throw FormatError("box dimension does not match the set dimension " + std::to_string(dim));
    for (std::size_t i = 0; i < dim; ++i)
        if (box.lower[i] > box.upper[i])
            throw FormatError("box has lower > upper in coordinate " + std::to_string(i));
    return box;
}

Instance instance_from_json(const json &j)
{
    if (!j.is_object())
        throw FormatError("an instance must be a JSON object");
    Instance inst;
    inst.set = spec_from_json(j.at("set"));
    inst.m = size_field(j, "m");
    inst.k = j.contains("k") ? size_field(j, "k") : 1;
    inst.points = points_from_json(j.at("points"), inst.set.dim());
    return inst;
}

PartitionResult result_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("parts") || !j.contains("witnesses"))
        throw FormatError("a result needs \"parts\" and \"witnesses\"");
    PartitionResult r;
    for (const auto &part : j.at("parts"))
        r.parts.push_back(part.get<std::vector<std::size_t>>());
    for (const auto &w : j.at("witnesses")) {
        if (!w.is_array())
            throw FormatError("a witness must be a point");
        r.witnesses.push_back(point_from_json(w, w.size()));
    }
    return r;
}

oracles::Caps caps_from_json(const json &j)
{
    oracles::Caps caps;
    if (j.is_null())
        return caps;
    if (!j.is_object())
        throw FormatError("caps must be a JSON object");
    for (const auto &[key, value] : j.items()) {
        if (!value.is_number_integer() || value.get<long long>() < 0)
            throw FormatError("cap \"" + key + "\" must be a nonnegative integer");
        if (key == "depth_points")
            caps.depth_points = value.get<std::size_t>();
        else if (key == "tverberg_partitions")
            caps.tverberg_partitions = value.get<std::uint64_t>();
        else if (key == "hoffman_ground")
            caps.hoffman_ground = value.get<std::size_t>();
        else if (key == "helly_family")
            caps.helly_family = value.get<std::size_t>();
        else
            throw FormatError("unknown cap \"" + key + "\"");
    }
    return caps;
}

json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw FormatError(path + ": " + e.what());
    }
}

} // namespace qtv::io
