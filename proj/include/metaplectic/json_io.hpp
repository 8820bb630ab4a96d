#pragma once

#include <json.hpp>

#include "metaplectic/exchange.hpp"
#include "metaplectic/jacquet.hpp"
#include "metaplectic/partitions.hpp"
#include "metaplectic/roots.hpp"

namespace metaplectic {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Root& a);
Json to_json(const RootSet& s);
Json to_json(const Coef& c);
Json to_json(const Character& chi);
Json to_json(const UnipotentConfig& cfg);
Json to_json(const Step& s);
Json to_json(const DerivationTrace& t);
Json to_json(const DimValue& d);
Json to_json(const Partition& p);

/// Inverses; malformed input raises ParseError, invalid configurations the
/// error of the UnipotentConfig constructor.
Root root_from_json(const Json& j);
RootSet roots_from_json(const Json& j);
Character character_from_json(const Json& j);
UnipotentConfig config_from_json(const Json& j);
DerivationTrace trace_from_json(const Json& j);

}  // namespace metaplectic
