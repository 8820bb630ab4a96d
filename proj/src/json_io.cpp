#include "metaplectic/json_io.hpp"

#include "metaplectic/errors.hpp"

namespace metaplectic {

namespace {

const char* tag_name(Tag t) {
  switch (t) {
    case Tag::Zero: return "zero";
    case Tag::One: return "one";
    case Tag::ArbitraryParam: return "param";
    case Tag::NonzeroParam: return "nonzero_param";
  }
  return "?";
}

Tag tag_from(const std::string& s) {
  if (s == "zero") return Tag::Zero;
  if (s == "one") return Tag::One;
  if (s == "param") return Tag::ArbitraryParam;
  if (s == "nonzero_param") return Tag::NonzeroParam;
  throw Error(ErrorCode::ParseError, "unknown character tag '" + s + "'");
}

Rule rule_from(const std::string& s) {
  for (Rule r : {Rule::RootExchange, Rule::Expand, Rule::Conjugate, Rule::Axiom}) {
    if (to_string(r) == s) return r;
  }
  throw Error(ErrorCode::ParseError, "unknown rule '" + s + "'");
}

Status status_from(const std::string& s) {
  if (s == "vanishing") return Status::Vanishing;
  if (s == "nonvanishing") return Status::Nonvanishing;
  throw Error(ErrorCode::ParseError, "unknown status '" + s + "'");
}

Equivalence equivalence_from(const std::string& s) {
  if (s == to_string(Equivalence::Isomorphism)) return Equivalence::Isomorphism;
  if (s == to_string(Equivalence::VanishingOnly)) return Equivalence::VanishingOnly;
  throw Error(ErrorCode::ParseError, "unknown equivalence '" + s + "'");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad field '") + key + "': " + e.what());
  }
}

Json evidence_json(const Evidence& ev) {
  return std::visit(
      [](const auto& e) -> Json {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, ExchangeEvidence>) {
          return {{"mode", e.mode}, {"C", to_json(e.C)}, {"X", to_json(e.X)}, {"Y", to_json(e.Y)}};
        } else if constexpr (std::is_same_v<E, ExpandEvidence>) {
          Json w = Json::array();
          for (const auto& t : e.witnesses) w.push_back(to_json(t));
          return {{"mode", e.mode}, {"row", e.row}, {"R", to_json(e.R)}, {"witnesses", w}};
        } else if constexpr (std::is_same_v<E, ConjugateEvidence>) {
          return {{"perm", e.perm}, {"torus_scaling", e.torus_scaling}};
        } else {
          return {{"claim", to_string(e.claim)}};
        }
      },
      ev);
}

Evidence evidence_from(Rule rule, const Json& j) {
  switch (rule) {
    case Rule::RootExchange:
      return ExchangeEvidence{roots_from_json(field(j, "C")), roots_from_json(field(j, "X")),
                              roots_from_json(field(j, "Y")), get<std::string>(j, "mode")};
    case Rule::Expand: {
      ExpandEvidence e{get<int>(j, "row"), roots_from_json(field(j, "R")),
                       get<std::string>(j, "mode"), {}};
      for (const auto& w : field(j, "witnesses")) e.witnesses.push_back(trace_from_json(w));
      return e;
    }
    case Rule::Conjugate:
      return ConjugateEvidence{get<std::vector<int>>(j, "perm"), get<bool>(j, "torus_scaling")};
    case Rule::Axiom:
      return AxiomEvidence{status_from(get<std::string>(j, "claim"))};
  }
  throw Error(ErrorCode::ParseError, "unknown rule");
}

}  // namespace

Json to_json(const Root& a) { return Json::array({a.i, a.j}); }

Json to_json(const RootSet& s) {
  Json out = Json::array();
  for (const Root& a : s) out.push_back(to_json(a));
  return out;
}

Json to_json(const Coef& c) {
  Json out = {{"tag", tag_name(c.tag)}};
  if (c.tag == Tag::ArbitraryParam || c.tag == Tag::NonzeroParam) out["id"] = c.id;
  return out;
}

Json to_json(const Character& chi) {
  Json out = Json::array();
  for (const auto& [root, coef] : chi.support()) {
    Json e = {{"root", to_json(root)}, {"tag", tag_name(coef.tag)}};
    if (coef.tag == Tag::ArbitraryParam || coef.tag == Tag::NonzeroParam) e["id"] = coef.id;
    out.push_back(e);
  }
  return out;
}

Json to_json(const UnipotentConfig& cfg) {
  return {{"rank", cfg.rank()}, {"roots", to_json(cfg.roots())}, {"character", to_json(cfg.character())}};
}

Json to_json(const Step& s) {
  return {{"rule", to_string(s.rule)},
          {"in", to_json(s.in)},
          {"out", s.out ? to_json(*s.out) : Json(nullptr)},
          {"evidence", evidence_json(s.evidence)}};
}

Json to_json(const DerivationTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(to_json(s));
  return {{"schema", kSchemaVersion},
          {"n", t.n},
          {"start", to_json(t.start)},
          {"steps", steps},
          {"terminal",
           {{"config", t.terminal.config ? to_json(*t.terminal.config) : Json(nullptr)},
            {"status", to_string(t.terminal.status)},
            {"equivalence", to_string(t.terminal.equivalence)}}}};
}

Json to_json(const DimValue& d) {
  Json out = {{"kind", to_string(d.kind)}};
  if (d.kind == DimKind::Exact) out["value"] = d.value;
  if (d.kind == DimKind::FiniteUnknown) {
    out["description"] = d.description;
    out["unknown_blocks"] = d.unknown_blocks;
  }
  return out;
}

Json to_json(const Partition& p) { return p.parts(); }

Root root_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw Error(ErrorCode::ParseError, "root must be a pair of integers");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

RootSet roots_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "root set must be an array");
  RootSet out;
  for (const auto& a : j) out.insert(root_from_json(a));
  return out;
}

Character character_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "character must be an array");
  Character chi;
  for (const auto& e : j) {
    const int id = e.is_object() && e.contains("id") ? get<int>(e, "id") : 0;
    chi.set(root_from_json(field(e, "root")), {tag_from(get<std::string>(e, "tag")), id});
  }
  return chi;
}

UnipotentConfig config_from_json(const Json& j) {
  return UnipotentConfig(get<int>(j, "rank"), roots_from_json(field(j, "roots")),
                         character_from_json(field(j, "character")));
}

DerivationTrace trace_from_json(const Json& j) {
  if (j.contains("schema") && j.at("schema") != kSchemaVersion) {
    throw Error(ErrorCode::ParseError, "unsupported schema version");
  }
  DerivationTrace t;
  t.n = get<int>(j, "n");
  t.start = config_from_json(field(j, "start"));
  const Json& steps = field(j, "steps");
  if (!steps.is_array()) throw Error(ErrorCode::ParseError, "steps must be an array");
  for (const auto& s : steps) {
    Step st;
    st.rule = rule_from(get<std::string>(s, "rule"));
    st.in = config_from_json(field(s, "in"));
    if (!field(s, "out").is_null()) st.out = config_from_json(s.at("out"));
    st.evidence = evidence_from(st.rule, field(s, "evidence"));
    t.steps.push_back(std::move(st));
  }
  const Json& term = field(j, "terminal");
  if (!field(term, "config").is_null()) t.terminal.config = config_from_json(term.at("config"));
  t.terminal.status = status_from(get<std::string>(term, "status"));
  t.terminal.equivalence = equivalence_from(get<std::string>(term, "equivalence"));
  return t;
}

}  // namespace metaplectic
