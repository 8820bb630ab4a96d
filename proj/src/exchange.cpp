#include "metaplectic/exchange.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "metaplectic/errors.hpp"
#include "metaplectic/jacquet.hpp"

namespace metaplectic {

std::string to_string(Rule r) {
  switch (r) {
    case Rule::RootExchange: return "ROOT_EXCHANGE";
    case Rule::Expand: return "EXPAND";
    case Rule::Conjugate: return "CONJUGATE";
    case Rule::Axiom: return "AXIOM";
  }
  return "?";
}

std::string to_string(Status s) {
  return s == Status::Vanishing ? "vanishing" : "nonvanishing";
}

std::string to_string(Equivalence e) {
  return e == Equivalence::Isomorphism ? "isomorphism" : "vanishing_equivalence";
}

std::string to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::Vanishing: return "vanishing";
    case OrbitStatus::Nonvanishing: return "nonvanishing";
    case OrbitStatus::Dominated: return "dominated";
  }
  return "?";
}

namespace {

RootSet unite(const RootSet& a, const RootSet& b) {
  RootSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

Character restrict(const Character& chi, const RootSet& roots) {
  Character out;
  for (const auto& [root, coef] : chi.support()) {
    if (roots.count(root)) out.set(root, coef);
  }
  return out;
}

int next_param_id(const Character& chi) {
  int id = 0;
  for (const auto& [root, coef] : chi.support()) {
    if (coef.tag == Tag::ArbitraryParam || coef.tag == Tag::NonzeroParam) id = std::max(id, coef.id);
  }
  return id + 1;
}

std::optional<UnipotentConfig> try_config(int rank, const RootSet& roots, const Character& chi,
                                          std::string* why = nullptr) {
  auto issues = UnipotentConfig::problems(rank, roots, chi);
  if (!issues.empty()) {
    if (why) *why = issues.front();
    return std::nullopt;
  }
  return UnipotentConfig(rank, roots, chi);
}

// Rows 1..m complete: {(i,j) : i <= m, i < j <= r}.
RootSet upper_rows(int r, int m) {
  RootSet out;
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= r; ++j) out.insert({i, j});
  }
  return out;
}

RootSet row_group(int r, int m) {
  RootSet out;
  for (int j = m + 1; j <= r; ++j) out.insert({m, j});
  return out;
}

bool is_simple(const Root& a) { return a.j == a.i + 1; }

}  // namespace

UnipotentConfig ExchangeQuadruple::d_side() const {
  return UnipotentConfig(rank, unite(C, X), psi_C);
}

UnipotentConfig ExchangeQuadruple::b_side() const {
  return UnipotentConfig(rank, unite(C, Y), psi_C);
}

QuadrupleCheck verify_quadruple(const UnipotentConfig& A, const RootSet& C, const RootSet& X,
                                const RootSet& Y) {
  QuadrupleCheck res;
  auto fail = [&](char c, std::string d) { res.violations.push_back({c, std::move(d)}); };
  const Character& chi = A.character();

  // (a) containment and disjointness
  for (const Root& c : C) {
    if (!A.contains(c)) fail('a', "C root " + to_string(c) + " not in A");
  }
  for (const Root& x : X) {
    if (!A.contains(x)) fail('a', "X root " + to_string(x) + " not in A");
    if (C.count(x)) fail('a', "X root " + to_string(x) + " also in C");
  }
  for (const Root& y : Y) {
    if (C.count(y)) fail('a', "Y root " + to_string(y) + " also in C");
    if (X.count(y)) fail('a', "Y root " + to_string(y) + " also in X");
  }

  // (b) X, Y abelian; they normalize C and preserve psi_C
  if (!is_abelian(X)) fail('b', "X is not abelian");
  if (!is_abelian(Y)) fail('b', "Y is not abelian");
  for (const Root& x : X) {
    if (chi.at(x).nonzero_tag()) fail('b', "character nonzero on X root " + to_string(x));
  }
  for (const RootSet* side : {&X, &Y}) {
    for (const Root& v : *side) {
      for (const Root& c : C) {
        auto s = root_sum(v, c);
        if (!s) continue;
        if (!C.count(*s)) {
          fail('b', "[" + to_string(v) + "," + to_string(c) + "] = " + to_string(*s) +
                        " leaves C");
        } else if (chi.at(*s).nonzero_tag()) {
          fail('b', "[" + to_string(v) + "," + to_string(c) + "] = " + to_string(*s) +
                        " carries a nonzero character tag");
        }
      }
    }
  }

  // (c) [X, Y] in C
  for (const Root& x : X) {
    for (const Root& y : Y) {
      auto s = root_sum(x, y);
      if (s && !C.count(*s)) {
        fail('c', "[" + to_string(x) + "," + to_string(y) + "] = " + to_string(*s) + " not in C");
      }
    }
  }

  // (d) A u Y = C u X u Y, closed, with C u X and C u Y closed
  const RootSet all = unite(unite(C, X), Y);
  for (const Root& a : A.roots()) {
    if (!all.count(a)) fail('d', "A root " + to_string(a) + " outside C u X u Y");
  }
  if (!is_closed(unite(C, X))) fail('d', "C u X is not closed");
  if (!is_closed(unite(C, Y))) fail('d', "C u Y is not closed");
  if (!is_closed(all)) fail('d', "C u X u Y is not closed");
  for (const Root& a : all) {
    if (a.i < a.j && all.count(Root{a.j, a.i})) {
      fail('d', "C u X u Y contains " + to_string(a) + " and its negative");
    }
  }

  // (e) nondegenerate pairing with permutation pattern
  if (X.size() != Y.size()) {
    fail('e', "|X| = " + std::to_string(X.size()) + " but |Y| = " + std::to_string(Y.size()));
  } else {
    std::vector<Root> xs(X.begin(), X.end());
    std::vector<Root> ys(Y.begin(), Y.end());
    std::vector<int> col_hits(ys.size(), 0);
    for (const Root& x : xs) {
      int hits = 0;
      for (std::size_t k = 0; k < ys.size(); ++k) {
        auto s = root_sum(x, ys[k]);
        Coef coef = (s && C.count(*s)) ? chi.at(*s) : Coef{};
        if (!coef.nonzero_tag()) continue;
        ++hits;
        ++col_hits[k];
        if (!coef.surely_nonzero()) {
          fail('e', "pairing entry at " + to_string(x) + "+" + to_string(ys[k]) +
                        " is not surely nonzero");
        }
      }
      if (hits != 1) {
        fail('e', "row " + to_string(x) + " of the pairing has " + std::to_string(hits) +
                      " nonzero entries");
      }
    }
    for (std::size_t k = 0; k < ys.size(); ++k) {
      if (col_hits[k] != 1) {
        fail('e', "column " + to_string(ys[k]) + " of the pairing has " +
                      std::to_string(col_hits[k]) + " nonzero entries");
      }
    }
  }

  if (res.violations.empty()) res.quadruple = ExchangeQuadruple{A.rank(), C, X, Y, restrict(chi, C)};
  return res;
}

UnipotentConfig apply_exchange(const ExchangeQuadruple& q, const UnipotentConfig& cfg) {
  if (!(cfg == q.d_side())) {
    throw Error(ErrorCode::ConfigMismatch, "config is not C u X with psi_C extended by zero");
  }
  return q.b_side();
}

UnipotentConfig apply_conjugate(const UnipotentConfig& cfg, const std::vector<int>& perm) {
  const int r = cfg.rank();
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expect(r);
  std::iota(expect.begin(), expect.end(), 1);
  if (sorted != expect) throw Error(ErrorCode::InvalidArgument, "not a permutation of 1..r");
  auto move = [&](const Root& a) { return Root{perm[a.i - 1], perm[a.j - 1]}; };
  RootSet roots;
  for (const Root& a : cfg.roots()) roots.insert(move(a));
  Character chi;
  for (const auto& [root, coef] : cfg.character().support()) chi.set(move(root), coef);
  return UnipotentConfig(r, std::move(roots), std::move(chi));
}

UnipotentConfig apply_torus_scaling(const UnipotentConfig& cfg) {
  std::vector<int> parent(cfg.rank() + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Character chi;
  for (const auto& [root, coef] : cfg.character().support()) {
    int a = find(root.i);
    int b = find(root.j);
    if (a == b) {
      throw Error(ErrorCode::InvalidArgument,
                  "character support has a cycle; torus scaling cannot normalize it");
    }
    parent[a] = b;
    chi.set(root, coef.tag == Tag::NonzeroParam ? Coef{Tag::One, 0} : coef);
  }
  return UnipotentConfig(cfg.rank(), cfg.roots(), std::move(chi));
}

namespace {

struct StepContext {
  int n;
  int index;
  std::vector<Diagnostic>* out;
  void fail(const std::string& msg) const { out->push_back({index, msg}); }
};

// The Lemma-(2) partner of an adjoin step, and the two sides of an exchange.
void check_exchange(const Step& step, const ExchangeEvidence& ev, const StepContext& ctx) {
  const UnipotentConfig& in = step.in;
  std::string why;
  std::optional<UnipotentConfig> A;
  if (ev.mode == "exchange") {
    if (in.roots() != unite(ev.C, ev.X)) ctx.fail("input roots differ from C u X");
    A = in;
  } else if (ev.mode == "adjoin") {
    if (in.roots() != ev.C) ctx.fail("input roots differ from C");
    A = try_config(in.rank(), unite(ev.C, ev.X), restrict(in.character(), ev.C), &why);
    if (!A) ctx.fail("condition (d): C u X is not a valid configuration: " + why);
  } else {
    ctx.fail("unknown exchange mode '" + ev.mode + "'");
  }
  if (!A) return;
  if (!(restrict(in.character(), ev.C) == in.character())) {
    ctx.fail("condition (b): input character is not supported on C");
  }
  auto check = verify_quadruple(*A, ev.C, ev.X, ev.Y);
  for (const auto& v : check.violations) {
    ctx.fail(std::string("condition (") + v.condition + "): " + v.detail);
  }
  if (!check.ok()) return;
  auto expected = check.quadruple->b_side();
  if (!step.out || !(*step.out == expected)) ctx.fail("output is not C u Y with psi_C");
}

// Shape of an EXPAND input: rows < m complete, row m empty, everything else
// strictly below-right of row m, and the row part of the character on simple roots.
bool expand_shape(const UnipotentConfig& in, int m, const StepContext* ctx) {
  const int r = in.rank();
  bool good = true;
  auto bad = [&](const std::string& msg) {
    good = false;
    if (ctx) ctx->fail(msg);
  };
  if (m < 1 || m >= r) {
    bad("expansion row " + std::to_string(m) + " out of range");
    return false;
  }
  for (const Root& a : upper_rows(r, m - 1)) {
    if (!in.contains(a)) bad("row " + std::to_string(a.i) + " incomplete: missing " + to_string(a));
  }
  for (const Root& a : in.roots()) {
    const bool top = a.i < m && a.i < a.j;
    const bool lower = a.i > m && a.j > m;
    if (!top && !lower) bad("root " + to_string(a) + " meets row/column " + std::to_string(m));
  }
  for (const auto& [root, coef] : in.character().support()) {
    if (root.i < m && !is_simple(root)) {
      bad("character on non-simple upper root " + to_string(root));
    }
  }
  return good;
}

Character upper_character(const UnipotentConfig& in, int m) {
  Character out;
  for (const auto& [root, coef] : in.character().support()) {
    if (root.i < m) out.set(root, coef);
  }
  return out;
}

UnipotentConfig witness_start(const UnipotentConfig& in, int m, Tag tag) {
  Character chi = upper_character(in, m);
  chi.set({m, m + 1}, {tag, next_param_id(chi)});
  return UnipotentConfig(in.rank(), upper_rows(in.rank(), m), std::move(chi));
}

void check_steps(const DerivationTrace& t, std::vector<Diagnostic>& out, const std::string& prefix);

void check_expand(const Step& step, const ExpandEvidence& ev, const StepContext& ctx) {
  const UnipotentConfig& in = step.in;
  const int m = ev.row;
  if (!expand_shape(in, m, &ctx)) return;
  if (ev.R != row_group(in.rank(), m)) ctx.fail("R is not the row group of row " + std::to_string(m));
  Tag tag;
  if (ev.mode == "zero") {
    tag = Tag::NonzeroParam;
    Character chi = in.character();
    auto expected = try_config(in.rank(), unite(in.roots(), ev.R), chi);
    if (!expected || !step.out || !(*step.out == *expected)) {
      ctx.fail("output is not the input enlarged by R with Zero on R");
    }
  } else if (ev.mode == "vanishing") {
    tag = Tag::ArbitraryParam;
    if (step.out) ctx.fail("vanishing expansion must conclude the trace");
  } else {
    ctx.fail("unknown expansion mode '" + ev.mode + "'");
    return;
  }
  const UnipotentConfig need = witness_start(in, m, tag);
  bool covered = false;
  for (std::size_t w = 0; w < ev.witnesses.size(); ++w) {
    const auto& wt = ev.witnesses[w];
    std::vector<Diagnostic> sub;
    check_steps(wt, sub, "witness " + std::to_string(w) + ": ");
    for (const auto& d : sub) ctx.fail(d.message);
    if (wt.n != ctx.n) ctx.fail("witness " + std::to_string(w) + " uses a different n");
    if (wt.terminal.status != Status::Vanishing) {
      ctx.fail("witness " + std::to_string(w) + " does not conclude vanishing");
    }
    if (wt.start == need && sub.empty() && wt.terminal.status == Status::Vanishing) covered = true;
  }
  if (!covered) {
    ctx.fail(std::string("incomplete witnesses: no vanishing trace for ") +
             (tag == Tag::NonzeroParam ? "a nonzero" : "an arbitrary") + " character on " +
             to_string(Root{m, m + 1}));
  }
}

void check_conjugate(const Step& step, const ConjugateEvidence& ev, const StepContext& ctx) {
  try {
    UnipotentConfig expected =
        ev.torus_scaling ? apply_torus_scaling(step.in) : apply_conjugate(step.in, ev.perm);
    if (!step.out || !(*step.out == expected)) ctx.fail("output is not the conjugated input");
  } catch (const Error& e) {
    ctx.fail(std::string("conjugation rejected: ") + e.what());
  }
}

// Compositions read off simple-root coefficients, one per zero/nonzero choice of
// the ArbitraryParam tags.
std::vector<Partition> axiom_compositions(const UnipotentConfig& cfg) {
  const int r = cfg.rank();
  std::vector<Root> free;
  for (const auto& [root, coef] : cfg.character().support()) {
    if (coef.tag == Tag::ArbitraryParam) free.push_back(root);
  }
  std::vector<Partition> out;
  for (unsigned mask = 0; mask < (1u << free.size()); ++mask) {
    std::vector<int> parts;
    int run = 1;
    for (int i = 1; i < r; ++i) {
      Coef c = cfg.character().at({i, i + 1});
      bool on = c.surely_nonzero();
      if (c.tag == Tag::ArbitraryParam) {
        auto pos = std::find(free.begin(), free.end(), Root{i, i + 1}) - free.begin();
        on = (mask >> pos) & 1u;
      }
      if (on) {
        ++run;
      } else {
        parts.push_back(run);
        run = 1;
      }
    }
    parts.push_back(run);
    out.push_back(Partition::composition(std::move(parts)));
  }
  return out;
}

void check_axiom(const Step& step, const AxiomEvidence& ev, const StepContext& ctx) {
  const UnipotentConfig& in = step.in;
  if (in.roots() != positive_roots(in.rank())) ctx.fail("axiom input is not the full unipotent radical");
  for (const auto& [root, coef] : in.character().support()) {
    if (!is_simple(root)) ctx.fail("axiom character is nonzero on non-simple root " + to_string(root));
  }
  if (step.out) ctx.fail("axiom step must conclude the trace");
  auto comps = axiom_compositions(in);
  if (ev.claim == Status::Vanishing) {
    for (const auto& c : comps) {
      if (!vanishes(ctx.n, c)) {
        ctx.fail("vanishing claimed but composition " + to_string(c) + " has all parts <= n");
      }
    }
  } else {
    for (const auto& [root, coef] : in.character().support()) {
      if (coef.tag == Tag::ArbitraryParam) ctx.fail("nonvanishing claimed with a free parameter");
    }
    for (const auto& c : comps) {
      if (vanishes(ctx.n, c)) ctx.fail("nonvanishing claimed but composition " + to_string(c) + " vanishes");
    }
  }
}

bool concludes(const Step& s) {
  if (s.rule == Rule::Axiom) return true;
  if (s.rule == Rule::Expand) {
    if (auto* ev = std::get_if<ExpandEvidence>(&s.evidence)) return ev->mode == "vanishing";
  }
  return false;
}

void check_steps(const DerivationTrace& t, std::vector<Diagnostic>& out, const std::string& prefix) {
  std::vector<Diagnostic> local;
  auto trace_fail = [&](const std::string& msg) { local.push_back({-1, msg}); };
  if (t.steps.empty()) {
    trace_fail("trace has no steps");
  } else if (!(t.steps.front().in == t.start)) {
    trace_fail("first step does not start from the trace start");
  }
  bool weak = false;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const Step& s = t.steps[i];
    StepContext ctx{t.n, static_cast<int>(i), &local};
    if (i > 0) {
      const Step& prev = t.steps[i - 1];
      if (!prev.out || !(*prev.out == s.in)) ctx.fail("input does not match the previous output");
    }
    const bool last = i + 1 == t.steps.size();
    if (concludes(s) != last) {
      ctx.fail(last ? "trace does not end with a concluding step" : "concluding step before the end");
    }
    switch (s.rule) {
      case Rule::RootExchange:
        if (auto* ev = std::get_if<ExchangeEvidence>(&s.evidence)) {
          if (ev->mode == "adjoin") weak = true;
          check_exchange(s, *ev, ctx);
        } else {
          ctx.fail("evidence does not match rule");
        }
        break;
      case Rule::Expand:
        if (auto* ev = std::get_if<ExpandEvidence>(&s.evidence)) {
          check_expand(s, *ev, ctx);
        } else {
          ctx.fail("evidence does not match rule");
        }
        break;
      case Rule::Conjugate:
        if (auto* ev = std::get_if<ConjugateEvidence>(&s.evidence)) {
          check_conjugate(s, *ev, ctx);
        } else {
          ctx.fail("evidence does not match rule");
        }
        break;
      case Rule::Axiom:
        if (auto* ev = std::get_if<AxiomEvidence>(&s.evidence)) {
          check_axiom(s, *ev, ctx);
        } else {
          ctx.fail("evidence does not match rule");
        }
        break;
    }
  }
  if (!t.steps.empty()) {
    const Step& last = t.steps.back();
    Status derived = Status::Vanishing;
    if (auto* ev = std::get_if<AxiomEvidence>(&last.evidence)) derived = ev->claim;
    if (t.terminal.status != derived) trace_fail("terminal status disagrees with the concluding step");
    if (!t.terminal.config || !(*t.terminal.config == last.in)) {
      trace_fail("terminal config is not the input of the concluding step");
    }
    Equivalence eq = weak ? Equivalence::VanishingOnly : Equivalence::Isomorphism;
    if (t.terminal.equivalence != eq) trace_fail("terminal equivalence marker is wrong");
  }
  for (auto& d : local) {
    d.message = prefix + (d.step >= 0 ? "step " + std::to_string(d.step) + ": " : "") + d.message;
    out.push_back(std::move(d));
  }
}

}  // namespace

TraceCheck check_trace(const DerivationTrace& t) {
  TraceCheck res;
  check_steps(t, res.diagnostics, "");
  return res;
}

UnipotentConfig apply_expand(const UnipotentConfig& cfg, const RootSet& R,
                             const std::vector<DerivationTrace>& witnesses) {
  if (R.empty()) return cfg;
  const int m = R.begin()->i;
  if (R != row_group(cfg.rank(), m)) {
    throw Error(ErrorCode::InvalidArgument, "R is not a row group of the configuration");
  }
  if (witnesses.empty()) {
    throw Error(ErrorCode::IncompleteWitnesses,
                "incomplete witnesses: no vanishing trace for a nonzero character on " +
                    to_string(Root{m, m + 1}));
  }
  std::string why;
  auto out = try_config(cfg.rank(), unite(cfg.roots(), R), cfg.character(), &why);
  if (!out) throw Error(ErrorCode::InvalidArgument, "enlarged configuration is invalid: " + why);
  Step step{Rule::Expand, cfg, out, ExpandEvidence{m, R, "zero", witnesses}};
  std::vector<Diagnostic> diags;
  StepContext ctx{witnesses.front().n, 0, &diags};
  check_expand(step, std::get<ExpandEvidence>(step.evidence), ctx);
  if (diags.empty()) return *out;
  bool coverage = false;
  std::string detail;
  for (const auto& d : diags) {
    coverage = coverage || d.message.rfind("incomplete witnesses", 0) == 0;
    detail += (detail.empty() ? "" : "; ") + d.message;
  }
  throw Error(coverage ? ErrorCode::IncompleteWitnesses : ErrorCode::InvalidArgument, detail);
}

// ---------------------------------------------------------------------------
// Scripted derivations

namespace {

class Script {
 public:
  Script(int n, UnipotentConfig start) : n_(n), cur_(std::move(start)) { trace_.n = n; trace_.start = cur_; }

  const UnipotentConfig& current() const { return cur_; }

  void exchange(const RootSet& X, const RootSet& Y) {
    RootSet C = cur_.roots();
    for (const Root& x : X) C.erase(x);
    ExchangeEvidence ev{C, X, Y, "exchange"};
    push(Rule::RootExchange, UnipotentConfig(cur_.rank(), unite(C, Y), cur_.character()), ev);
  }

  void adjoin(const RootSet& X, const RootSet& Y) {
    ExchangeEvidence ev{cur_.roots(), X, Y, "adjoin"};
    weak_ = true;
    push(Rule::RootExchange, UnipotentConfig(cur_.rank(), unite(cur_.roots(), Y), cur_.character()), ev);
  }

  void conjugate(const std::vector<int>& perm) {
    push(Rule::Conjugate, apply_conjugate(cur_, perm), ConjugateEvidence{perm, false});
  }

  void torus_scaling() {
    push(Rule::Conjugate, apply_torus_scaling(cur_), ConjugateEvidence{{}, true});
  }

  void expand_zero(int m) {
    ExpandEvidence ev{m, row_group(cur_.rank(), m), "zero", {}};
    ev.witnesses.push_back(vanishing_witness(n_, witness_start(cur_, m, Tag::NonzeroParam)));
    auto out = UnipotentConfig(cur_.rank(), unite(cur_.roots(), ev.R), cur_.character());
    push(Rule::Expand, out, std::move(ev));
  }

  DerivationTrace expand_vanishing(int m) {
    ExpandEvidence ev{m, row_group(cur_.rank(), m), "vanishing", {}};
    ev.witnesses.push_back(vanishing_witness(n_, witness_start(cur_, m, Tag::ArbitraryParam)));
    return conclude(Rule::Expand, std::move(ev), Status::Vanishing);
  }

  DerivationTrace axiom(Status claim) { return conclude(Rule::Axiom, AxiomEvidence{claim}, claim); }

  std::vector<Step> take_steps() { return std::move(trace_.steps); }

  // (V_{1^m}, chi) -> Vanishing, row by row down to the full radical.
  static DerivationTrace vanishing_witness(int n, const UnipotentConfig& start) {
    Script s(n, start);
    int m = 0;
    while (m + 1 <= start.rank() && s.cur_.contains({m + 1, start.rank()})) ++m;
    bool has_nonzero_param = false;
    for (const auto& [root, coef] : start.character().support()) {
      if (coef.tag == Tag::NonzeroParam) has_nonzero_param = true;
    }
    if (has_nonzero_param) s.torus_scaling();
    if (m + 1 >= start.rank()) return s.axiom(Status::Vanishing);
    return s.expand_vanishing(m + 1);
  }

 private:
  void push(Rule rule, UnipotentConfig out, Evidence ev) {
    Step st{rule, cur_, out, std::move(ev)};
    trace_.steps.push_back(std::move(st));
    cur_ = std::move(out);
  }

  DerivationTrace conclude(Rule rule, Evidence ev, Status status) {
    trace_.steps.push_back(Step{rule, cur_, std::nullopt, std::move(ev)});
    trace_.terminal.status = status;
    trace_.terminal.config = cur_;
    trace_.terminal.equivalence = weak_ ? Equivalence::VanishingOnly : Equivalence::Isomorphism;
    return std::move(trace_);
  }

  int n_;
  UnipotentConfig cur_;
  DerivationTrace trace_;
  bool weak_ = false;
};

// Carries the block of `orbit` sitting at positions offset+1.. from its V2 shape
// to its U_O shape. Adjoins come first, while every X partner is still addable;
// exchanges then run column by column through the first block.
void stage_a(Script& s, const Partition& orbit, int offset) {
  const int p1 = orbit[0];
  const int len = orbit.size();
  const WeightVector w = orbit_weights(orbit, WeightVariant::Prime);
  auto at = [&](int k) { return k + offset; };
  auto weight = [&](int k) { return w[k - 1]; };

  for (int a = 1; a < p1; ++a) {
    for (int j = p1 + 1; j <= len; ++j) {
      if (weight(a) - weight(j) == 1) s.adjoin({{at(j), at(a + 1)}}, {{at(a), at(j)}});
    }
  }
  for (int a = 2; a <= p1; ++a) {
    std::vector<int> lower;
    for (int j = p1 + 1; j <= len; ++j) {
      if (weight(j) - weight(a) >= 2) lower.push_back(j);
    }
    std::stable_sort(lower.begin(), lower.end(),
                     [&](int x, int y) { return weight(x) < weight(y); });
    for (int j : lower) s.exchange({{at(j), at(a)}}, {{at(a - 1), at(j)}});
  }
}

Partition drop_first(const Partition& p) {
  return Partition(std::vector<int>(p.parts().begin() + 1, p.parts().end()));
}

}  // namespace

std::vector<Step> exchange_chain(const Partition& orbit) {
  Script s(2, orbit_config(orbit, OrbitConfigVariant::V2));
  if (orbit.length() > 1) stage_a(s, orbit, 0);
  return s.take_steps();
}

DerivationTrace derive_orbit_trace(int n, const Partition& orbit) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  const int r = orbit.size();
  const bool vanishing = orbit[0] > n;
  if (!vanishing && !(orbit == theta_orbit(n, r))) {
    throw Error(ErrorCode::UnsupportedOrbit,
                "no scripted derivation for " + to_string(orbit) + " at n = " + std::to_string(n));
  }
  Script s(n, orbit_config(orbit, OrbitConfigVariant::V2));
  if (vanishing) {
    if (orbit.length() > 1) stage_a(s, orbit, 0);
    if (orbit[0] == r) return s.axiom(Status::Vanishing);
    return s.expand_vanishing(orbit[0]);
  }

  Partition rest = orbit;
  int offset = 0;
  while (true) {
    if (rest.length() == 1) break;
    stage_a(s, rest, offset);
    const int row = offset + rest[0];
    s.expand_zero(row);
    Partition tail = drop_first(rest);
    auto to_standard = prime_to_standard_permutation(tail);
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 1);
    bool identity = true;
    for (std::size_t k = 0; k < to_standard.size(); ++k) {
      // inverse: Standard position to_standard[k] goes back to Prime position k+1
      perm[row + to_standard[k] - 1] = row + static_cast<int>(k) + 1;
      if (to_standard[k] != static_cast<int>(k) + 1) identity = false;
    }
    if (!identity) s.conjugate(perm);
    offset = row;
    rest = tail;
  }
  return s.axiom(Status::Nonvanishing);
}

OrbitClassification classify_orbit_status(int n, const Partition& orbit) {
  const Partition theta = theta_orbit(n, orbit.size());
  const Dominance d = dominance_compare(orbit, theta);
  if (d == Dominance::Equal) {
    return {orbit, OrbitStatus::Nonvanishing, d, derive_orbit_trace(n, orbit)};
  }
  if (d == Dominance::Less) return {orbit, OrbitStatus::Dominated, d, std::nullopt};
  if (orbit[0] <= n) {
    throw Error(ErrorCode::UnsupportedOrbit, to_string(orbit) + " is not below " + to_string(theta) +
                                                 " yet has first part <= n");
  }
  return {orbit, OrbitStatus::Vanishing, d, derive_orbit_trace(n, orbit)};
}

std::vector<OrbitClassification> classify_all(int n, int r) {
  std::vector<OrbitClassification> out;
  for (const auto& p : partitions_of(r)) out.push_back(classify_orbit_status(n, p));
  return out;
}

}  // namespace metaplectic
