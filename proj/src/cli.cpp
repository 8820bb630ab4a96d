#include "metaplectic/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "metaplectic/acceptance.hpp"
#include "metaplectic/cocycle.hpp"
#include "metaplectic/errors.hpp"
#include "metaplectic/exchange.hpp"
#include "metaplectic/jacquet.hpp"
#include "metaplectic/json_io.hpp"
#include "metaplectic/local_field.hpp"
#include "metaplectic/partitions.hpp"
#include "metaplectic/torus_cover.hpp"

namespace metaplectic {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputMode { Json, Text };

struct Outcome {
  Json body = Json::object();
  bool passed = true;
  std::optional<std::string> text;  // replaces the flattened text rendering

  void verdict(const std::string& name, bool ok) {
    body["verdicts"][name] = ok;
    passed = passed && ok;
  }
};

struct Flags {
  int n = 0;
  int r = 0;
  int c = 0;
  long long q = 0;
  std::uint64_t seed = 0x5eed;
  std::string lambda, orbit, levi, a, b, subgroup, ambient = "full", x, y;
  std::string check_mode = "exhaustive";
  std::string emit, file;
  bool first_formula = false;
  bool with_traces = false;
};

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && std::all_of(j.begin(), j.end(), is_scalar)) {
    out << prefix << ": ";
    if (j.empty()) out << "[]";
    for (std::size_t i = 0; i < j.size(); ++i) out << (i ? "," : "") << scalar_text(j[i]);
    out << "\n";
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << prefix << ": " << scalar_text(j) << "\n";
  }
}

Partition partition_flag(const std::string& text, bool decreasing, const char* flag) {
  try {
    return parse_partition(text, decreasing);
  } catch (const Error& e) {
    throw UsageError(std::string("--") + flag + ": " + e.what());
  }
}

FieldModel field_model(int n, long long q) {
  if (n < 2) throw UsageError("--n must be at least 2");
  try {
    return FieldModel(n, q == 0 ? tame_primes(n, 1).front() : q);
  } catch (const Error& e) {
    throw UsageError(std::string("--q: ") + e.what());
  }
}

CocycleParams cocycle_params(const Flags& f) {
  FieldModel m = field_model(f.n, f.q);
  if (f.c < 0 || f.c >= f.n) throw UsageError("--c must satisfy 0 <= c < n");
  if (f.r < 1) throw UsageError("--r must be positive");
  return CocycleParams(m, f.c, f.r);
}

std::pair<int, int> class_flag(const std::string& text, int n, const char* flag) {
  std::istringstream in(text);
  long long v = 0;
  long long u = 0;
  char comma = 0;
  if (!(in >> v >> comma >> u) || comma != ',' || !(in >> std::ws).eof()) {
    throw UsageError(std::string("--") + flag + " expects v,u");
  }
  return {mod(v, n), mod(u, n)};
}

Json torus_json(const TorusElement& t) {
  Json out = Json::array();
  for (const auto& e : t) out.push_back({e.v, e.u});
  return out;
}

Json field_json(const FieldModel& m) { return {{"n", m.n()}, {"q", m.q()}}; }

Json params_json(const CocycleParams& p) {
  return {{"n", p.n()}, {"q", p.model.q()}, {"c", p.c}, {"r", p.r}};
}

std::optional<Partition> levi_flag(const Flags& f) {
  if (f.levi.empty()) return std::nullopt;
  return partition_flag(f.levi, false, "levi");
}

Json subgroup_json(const Subgroup& s) { return {{"name", s.name()}, {"order", s.order()}}; }

Json check_json(const TraceCheck& chk) {
  Json diags = Json::array();
  for (const auto& d : chk.diagnostics) diags.push_back({{"step", d.step}, {"message", d.message}});
  return {{"ok", chk.ok()}, {"diagnostics", diags}};
}

Outcome theta_orbit_cmd(const Flags& f) {
  Outcome o;
  o.body["orbit"] = to_json(theta_orbit(f.n, f.r));
  return o;
}

Outcome orbit_data_cmd(const Flags& f) {
  const Partition orbit = partition_flag(f.orbit, true, "orbit");
  Outcome o;
  o.body["orbit"] = to_json(orbit);
  o.body["weights"] = {{"standard", orbit_weights(orbit, WeightVariant::Standard)},
                       {"prime", orbit_weights(orbit, WeightVariant::Prime)}};
  o.body["prime_to_standard"] = prime_to_standard_permutation(orbit);
  Json configs = Json::object();
  for (auto [name, variant] : std::vector<std::pair<const char*, OrbitConfigVariant>>{
           {"V2", OrbitConfigVariant::V2},
           {"U_O", OrbitConfigVariant::U_O},
           {"U_O_prime", OrbitConfigVariant::U_O_prime}}) {
    try {
      configs[name] = to_json(orbit_config(orbit, variant));
    } catch (const Error& e) {
      configs[name] = {{"error", {{"code", std::string(to_string(e.code()))}, {"detail", e.what()}}}};
    }
  }
  o.body["configs"] = configs;
  if (f.n > 0) {
    const Partition theta = theta_orbit(f.n, orbit.size());
    o.body["theta_orbit"] = to_json(theta);
    o.body["versus_theta"] = to_string(dominance_compare(orbit, theta));
    o.body["first_part_exceeds_n"] = orbit[0] > f.n;
  }
  return o;
}

Outcome hilbert_cmd(const Flags& f) {
  const FieldModel m = field_model(f.n, f.q);
  if (f.x.empty() != f.y.empty()) throw UsageError("--x and --y must be given together");
  Outcome o;
  o.body["field"] = field_json(m);
  if (!f.x.empty()) {
    auto x = class_flag(f.x, f.n, "x");
    auto y = class_flag(f.y, f.n, "y");
    o.body["x"] = {x.first, x.second};
    o.body["y"] = {y.first, y.second};
    o.body["value"] = hilbert_classes(m, x, y);
    return o;
  }
  const auto rep = check_hilbert_axioms(m);
  o.body["checked"] = rep.checked;
  o.body["violations"] = {{"bilinearity", rep.bilinearity},
                          {"antisymmetry", rep.antisymmetry},
                          {"x_minus_x", rep.x_minus_x},
                          {"degenerate", rep.degenerate}};
  o.verdict("axioms", rep.violations() == 0);
  return o;
}

CheckMode check_mode_flag(const Flags& f) {
  if (f.check_mode == "exhaustive") return CheckMode::Exhaustive();
  const std::string prefix = "sample=";
  if (f.check_mode.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      const std::string digits = f.check_mode.substr(prefix.size());
      const long long k = std::stoll(digits, &used);
      if (used == digits.size() && k > 0) return CheckMode::Sample(k, f.seed);
    } catch (const std::exception&) {
    }
  }
  throw UsageError("--mode expects exhaustive or sample=K");
}

Outcome cocycle_cmd(const Flags& f) {
  const CocycleParams p = cocycle_params(f);
  const CheckMode mode = check_mode_flag(f);
  const auto rep = check_cocycle_identity(p, mode);
  Outcome o;
  o.body["params"] = params_json(p);
  o.body["mode"] = mode.exhaustive ? "exhaustive" : "sample";
  if (!mode.exhaustive) o.body["seed"] = mode.seed;
  o.body["checked"] = rep.checked;
  o.body["violation_count"] = rep.violations.size();
  Json examples = Json::array();
  for (std::size_t i = 0; i < rep.violations.size() && i < 8; ++i) {
    const auto& v = rep.violations[i];
    Json triple = Json::array();
    for (const auto& t : v.triple) triple.push_back(torus_json(t));
    examples.push_back({{"triple", triple}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  o.body["violations"] = examples;
  o.verdict("cocycle_identity", rep.violations.empty());
  return o;
}

Partition lambda_flag(Flags& f) {
  const Partition lambda = partition_flag(f.lambda, false, "lambda");
  if (f.r != 0 && f.r != lambda.size()) throw UsageError("--r does not match the sum of --lambda");
  f.r = lambda.size();
  return lambda;
}

Outcome block_compat_cmd(Flags f) {
  const Partition lambda = lambda_flag(f);
  const CocycleParams p = cocycle_params(f);
  const auto rep = check_block_compatibility_exhaustive(p, lambda);
  Outcome o;
  o.body["params"] = params_json(p);
  o.body["lambda"] = to_json(lambda);
  o.body["checked"] = rep.checked;
  o.body["violation_count"] = rep.violation_count;
  Json examples = Json::array();
  for (const auto& [t, t2] : rep.violations) examples.push_back({torus_json(t), torus_json(t2)});
  o.body["violations"] = examples;
  o.verdict("block_compatibility", rep.violation_count == 0);
  return o;
}

Outcome torus_center_cmd(const Flags& f) {
  const CocycleParams p = cocycle_params(f);
  const auto levi = levi_flag(f);
  const CoverGroup g(p);
  const Subgroup ambient = named_subgroup(g, f.ambient, levi);
  const Subgroup center = center_bruteforce(g, ambient);
  Outcome o;
  o.body["params"] = params_json(p);
  o.body["order"] = g.order();
  o.body["ambient"] = subgroup_json(ambient);
  o.body["center_order"] = center.order();
  const std::map<std::string, std::string> predicted{{"full", "Z"}, {"sq", "Zn"}};
  if (!levi && predicted.count(f.ambient)) {
    const Subgroup expected = named_subgroup(g, predicted.at(f.ambient));
    o.body["predicted"] = subgroup_json(expected);
    o.verdict("center_matches_prediction", center == expected);
  }
  return o;
}

Outcome max_abelian_cmd(const Flags& f) {
    const CocycleParams p = cocycle_params(f);
  const auto levi = levi_flag(f);
  const CoverGroup g(p);
  const Subgroup s = named_subgroup(g, f.subgroup, levi);
  const Subgroup ambient = named_subgroup(g, f.ambient, levi);
  Outcome o;
  o.body["params"] = params_json(p);
  o.body["order"] = g.order();
  o.body["subgroup"] = subgroup_json(s);
  o.body["ambient"] = subgroup_json(ambient);
  o.verdict("abelian", is_abelian(g, s));
  o.verdict("maximal_abelian", is_maximal_abelian(g, s, ambient));
  return o;
}

Outcome index_cmd(const Flags& f) {
  if (f.a.empty() || f.b.empty()) throw UsageError("--num and --den are required");
  const CocycleParams p = cocycle_params(f);
  const auto levi = levi_flag(f);
  const CoverGroup g(p);
  const Subgroup a = named_subgroup(g, f.a, levi);
  const Subgroup b = named_subgroup(g, f.b, levi);
  Outcome o;
  o.body["params"] = params_json(p);
  o.body["order"] = g.order();
  o.body["num"] = subgroup_json(a);
  o.body["den"] = subgroup_json(b);
  o.body["index"] = index(a, b);
  return o;
}

std::int64_t product_of(const std::vector<std::int64_t>& v) {
  std::int64_t out = 1;
  for (auto x : v) out *= x;
  return out;
}

Outcome jacquet_cmd(Flags f) {
  const Partition lambda = lambda_flag(f);
  const CocycleParams p = cocycle_params(f);
  const auto res = semi_whittaker_dim(p.n(), p.model.q(), p.c, lambda, f.first_formula);
  Outcome o;
  o.body = to_json(res.dim);
  o.body["params"] = params_json(p);
  o.body["lambda"] = to_json(lambda);
  Json blocks = Json::array();
  for (const auto& d : res.d_blocks) blocks.push_back(to_json(d));
  o.body["d_blocks"] = blocks;
  o.body["indices"] = {{"numerators", res.numerators}, {"denominator", res.denominator}};
  if (res.first_numerators) {
    o.body["first_formula_indices"] = {{"numerators", *res.first_numerators},
                                       {"denominator", *res.first_denominator}};
    o.verdict("formulas_agree", product_of(res.numerators) * *res.first_denominator ==
                                    product_of(*res.first_numerators) * res.denominator);
  }
  return o;
}

Outcome exchange_trace_cmd(const Flags& f) {
  const Partition orbit = partition_flag(f.orbit, true, "orbit");
  if (f.n < 1) throw UsageError("--n must be positive");
  const DerivationTrace t = derive_orbit_trace(f.n, orbit);
  const TraceCheck chk = check_trace(t);
  const Json tj = to_json(t);
  Outcome o;
  o.body["orbit"] = to_json(orbit);
  o.body["status"] = to_string(t.terminal.status);
  o.body["equivalence"] = to_string(t.terminal.equivalence);
  o.body["steps"] = t.steps.size();
  o.body["check"] = check_json(chk);
  if (f.emit.empty()) {
    o.body["trace"] = tj;
  } else {
    std::ofstream file(f.emit);
    if (!(file << tj.dump(2) << "\n")) {
      throw Error(ErrorCode::InvalidArgument, "cannot write " + f.emit);
    }
    o.body["emitted"] = f.emit;
  }
  o.verdict("trace_checks", chk.ok());
  return o;
}

Outcome check_trace_cmd(const Flags& f) {
  std::ifstream file(f.file);
  if (!file) throw UsageError("cannot read " + f.file);
  Json j;
  try {
    j = Json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  const DerivationTrace t = trace_from_json(j);
  const TraceCheck chk = check_trace(t);
  Outcome o;
  o.body["file"] = f.file;
  o.body["steps"] = t.steps.size();
  o.body["status"] = to_string(t.terminal.status);
  o.body["equivalence"] = to_string(t.terminal.equivalence);
  o.body["check"] = check_json(chk);
  o.verdict("trace_checks", chk.ok());
  return o;
}

Outcome classify_cmd(const Flags& f) {
  Outcome o;
  o.body["n"] = f.n;
  o.body["r"] = f.r;
  o.body["theta_orbit"] = to_json(theta_orbit(f.n, f.r));
  Json rows = Json::array();
  bool all_ok = true;
  for (const auto& cl : classify_all(f.n, f.r)) {
    Json row = {{"orbit", to_json(cl.orbit)},
                {"status", to_string(cl.status)},
                {"versus_theta", to_string(cl.versus_theta)}};
    if (cl.trace) {
      const bool ok = check_trace(*cl.trace).ok();
      all_ok = all_ok && ok;
      row["trace_ok"] = ok;
      if (f.with_traces) row["trace"] = to_json(*cl.trace);
    }
    rows.push_back(row);
  }
  o.body["orbits"] = rows;
  o.verdict("traces_check", all_ok);
  return o;
}

Outcome wss_cmd(const Flags& f) {
  const auto cert = wss_check(f.n, f.r);
  Outcome o;
  o.body["holds"] = cert.holds;
  if (cert.holds) {
    o.body["type"] = {cert.a, cert.b};
    o.body["orbit"] = to_json(cert.orbit);
  }
  return o;
}

Outcome suite_cmd(const Flags&) {
  Outcome o;
  Json rows = Json::array();
  std::ostringstream table;
  int passed = 0;
  const auto results = run_acceptance();
  for (const auto& res : results) {
    rows.push_back({{"id", res.id}, {"name", res.name}, {"passed", res.passed}, {"detail", res.detail}});
    table << (res.passed ? "PASS" : "FAIL") << "  " << res.id << "  " << res.name << "  " << res.detail
          << "\n";
    passed += res.passed ? 1 : 0;
  }
  o.verdict("all_criteria", passed == static_cast<int>(results.size()));
  table << passed << "/" << results.size() << " criteria passed\n";
  o.body["criteria"] = rows;
  o.body["passed"] = passed;
  o.body["total"] = results.size();
  o.text = table.str();
  return o;
}

void write_output(Json body, OutputMode mode, std::ostream& out) {
  Json full = {{"schema", kSchemaVersion}};
  full.update(body);
  if (mode == OutputMode::Json) {
    out << full.dump() << "\n";
  } else {
    flatten(full, "", out);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computations on metaplectic covers of GL(r) at tame places", "metaplectic"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string mode_text = "json";
  app.add_option("--mode", mode_text, "Output format")->check(CLI::IsMember({"json", "text"}));

  Flags f;
  std::map<CLI::App*, std::function<Outcome()>> handlers;
  auto sub = [&](const std::string& name, const std::string& desc, std::function<Outcome()> h) {
    CLI::App* s = app.add_subcommand(name, desc);
    handlers[s] = std::move(h);
    return s;
  };
  auto n_opt = [&](CLI::App* s, bool required = true) {
    auto* opt = s->add_option("--n", f.n, "Degree of the cover")->check(CLI::PositiveNumber);
    if (required) opt->required();
  };
  auto r_opt = [&](CLI::App* s, bool required = true) {
    auto* opt = s->add_option("--r", f.r, "Rank")->check(CLI::PositiveNumber);
    if (required) opt->required();
  };
  auto field_opts = [&](CLI::App* s) {
    n_opt(s);
    s->add_option("--q", f.q, "Residue field size (default: smallest prime = 1 mod n)")
        ->check(CLI::PositiveNumber);
  };
  auto cover_opts = [&](CLI::App* s, bool rank_required = true) {
    field_opts(s);
    s->add_option("--c", f.c, "Cocycle class c mod n");
    r_opt(s, rank_required);
  };

  auto* s = sub("theta-orbit", "Orbit (n^a b) attached to the theta representation", [&] {
    return theta_orbit_cmd(f);
  });
  n_opt(s);
  r_opt(s);

  s = sub("orbit-data", "Weights and unipotent configurations of an orbit", [&] {
    return orbit_data_cmd(f);
  });
  s->add_option("--orbit", f.orbit, "Partition, e.g. 3,3,1")->required();
  n_opt(s, false);

  s = sub("hilbert", "Hilbert symbol value, or the axiom check over all classes", [&] {
    return hilbert_cmd(f);
  });
  field_opts(s);
  s->add_option("--x", f.x, "Class v,u of pi^v omega^u");
  s->add_option("--y", f.y, "Class v,u of pi^v omega^u");

  s = sub("cocycle-check", "2-cocycle identity on torus classes", [&] { return cocycle_cmd(f); });
  cover_opts(s);
  s->add_option("--mode", f.check_mode, "exhaustive or sample=K; json/text select the output");
  s->add_option("--seed", f.seed, "Seed for sampling");

  s = sub("block-compat", "Block compatibility of the cocycle over all class pairs", [&] {
    return block_compat_cmd(f);
  });
  cover_opts(s, false);
  s->add_option("--lambda", f.lambda, "Ordered composition, e.g. 2,1")->required();

  s = sub("torus-center", "Brute-force center of the cover torus or a named subgroup", [&] {
    return torus_center_cmd(f);
  });
  cover_opts(s);
  s->add_option("--ambient", f.ambient, "Named subgroup");
  s->add_option("--levi", f.levi, "Levi composition for the _M subgroups");

  s = sub("max-abelian", "Maximal abelian check of a named subgroup", [&] {
    return max_abelian_cmd(f);
  });
  cover_opts(s);
  s->add_option("--name,--subgroup", f.subgroup, "Named subgroup")->required();
  s->add_option("--ambient", f.ambient, "Named ambient subgroup");
  s->add_option("--levi", f.levi, "Levi composition for the _M subgroups");

  s = sub("index", "Index [A:B] of named subgroups", [&] { return index_cmd(f); });
  cover_opts(s);
  s->add_option("--num", f.a, "Named subgroup A")->required();
  s->add_option("--den", f.b, "Named subgroup B <= A")->required();
  s->add_option("--levi", f.levi, "Levi composition for the _M subgroups");

  s = sub("jacquet-dim", "Semi-Whittaker dimension of the theta representation", [&] {
    return jacquet_cmd(f);
  });
  cover_opts(s, false);
  s->add_option("--lambda", f.lambda, "Ordered composition, e.g. 2,2")->required();
  s->add_flag("--first-formula", f.first_formula, "Also evaluate the square-part index ratio");

  s = sub("exchange-trace", "Derivation trace for an orbit", [&] { return exchange_trace_cmd(f); });
  n_opt(s);
  s->add_option("--orbit", f.orbit, "Partition, e.g. 3,1")->required();
  s->add_option("--emit", f.emit, "Write the trace JSON to this file");

  s = sub("check-trace", "Re-verify a derivation trace", [&] { return check_trace_cmd(f); });
  s->add_option("file", f.file, "Trace JSON file")->required();

  s = sub("classify", "Status of every orbit of size r", [&] { return classify_cmd(f); });
  n_opt(s);
  r_opt(s);
  s->add_flag("--with-traces", f.with_traces, "Include the traces");

  s = sub("wss", "Whittaker-Speh-Shalika type check", [&] { return wss_cmd(f); });
  n_opt(s);
  r_opt(s);

  sub("suite", "Run the acceptance battery", [&] { return suite_cmd(f); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen->get_name() == "cocycle-check" && (f.check_mode == "json" || f.check_mode == "text")) {
    mode_text = f.check_mode;
    f.check_mode = "exhaustive";
  }
  const OutputMode mode = mode_text == "text" ? OutputMode::Text : OutputMode::Json;

  try {
    Outcome o = handlers.at(chosen)();
    if (mode == OutputMode::Text && o.text) {
      out << *o.text;
    } else {
      write_output(o.body, mode, out);
    }
    return o.passed ? 0 : 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    write_output({{"error", {{"code", std::string(to_string(e.code()))}, {"detail", e.what()}}}}, mode,
                 out);
    return 1;
  }
}

}  // namespace metaplectic
