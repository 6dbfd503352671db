#pragma once

#include "qtverberg/discrete_sets.hpp"
#include "qtverberg/engine.hpp"
#include "qtverberg/oracles.hpp"

#include <json.hpp>

#include <string>

// JSON forms of the library types. Scalars are written as "p/q" strings and
// read from either that form or a plain integer.
namespace qtv::io {

using json = nlohmann::json;

class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

json to_json(const Scalar &v);
json to_json(const Point &p);
json to_json(const PointSet &s);
json to_json(const Halfspace &h);
json to_json(const ConvexCombination &c);
json to_json(const MembershipCertificate &c);
json to_json(const DepthResult &d);
json to_json(const DiscreteSetSpec &s);
json to_json(const Box &b);
json to_json(const HollowCertificate &c);
json to_json(const Instance &inst);
// Result document: status is "ok", "no_partition_found" or "error"; the
// engine's finer status goes to "detail".
json to_json(const PartitionOutcome &outcome);

json to_json(const oracles::DepthReport &r);
json to_json(const oracles::TverbergReport &r);
json to_json(const oracles::HoffmanReport &r);
json to_json(const oracles::HellyReport &r);
json to_json(const oracles::VerifyReport &r);
json to_json(const oracles::Caps &c);

Scalar scalar_from_json(const json &j);
Point point_from_json(const json &j, std::size_t dim);
// Dimension taken from the first point unless given; an empty list needs it.
PointSet points_from_json(const json &j, std::size_t dim = 0);
DiscreteSetSpec spec_from_json(const json &j);
Box box_from_json(const json &j, std::size_t dim);
Instance instance_from_json(const json &j);
PartitionResult result_from_json(const json &j);
oracles::Caps caps_from_json(const json &j);

json read_json_file(const std::string &path);

} // namespace qtv::io
