#include "metaplectic/acceptance.hpp"

#include <chrono>
#include <sstream>
#include <tuple>

#include "metaplectic/cocycle.hpp"
#include "metaplectic/errors.hpp"
#include "metaplectic/exchange.hpp"
#include "metaplectic/jacquet.hpp"
#include "metaplectic/local_field.hpp"
#include "metaplectic/partitions.hpp"
#include "metaplectic/torus_cover.hpp"

namespace metaplectic {

namespace {

long long first_tame_prime(int n) { return tame_primes(n, 1).front(); }

CocycleParams params(int n, int c, int r) {
  return CocycleParams(FieldModel(n, first_tame_prime(n)), c, r);
}

bool fits_budget(int n, int exponent) {
  long long v = 1;
  for (int i = 0; i < exponent; ++i) {
    v *= n;
    if (v > enumeration_budget()) return false;
  }
  return true;
}

bool multiplicity_one(std::string& detail) {
  std::vector<std::tuple<int, int, int, std::vector<int>>> cases = {
      {2, 4, 0, {2, 2}}, {2, 4, 1, {2, 2}}, {3, 6, 0, {3, 3}}};
  if (fits_budget(4, 2 * 8 + 1)) {
    cases.push_back({4, 8, 0, {4, 4}});
  } else {
    cases.push_back({3, 6, 1, {3, 3}});
    cases.push_back({3, 6, 2, {3, 3}});
  }
  std::ostringstream os;
  bool ok = true;
  for (const auto& [n, r, c, parts] : cases) {
    Partition lambda(parts);
    auto t0 = std::chrono::steady_clock::now();
    auto res = semi_whittaker_dim(n, first_tame_prime(n), c, lambda);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool good = res.dim.kind == DimKind::Exact && res.dim.value == 1 && secs < 120;
    ok = ok && good;
    os << "(" << n << "," << r << "," << c << "," << to_string(lambda) << ")=" << res.dim.description
       << " ";
  }
  detail = os.str();
  return ok;
}

bool odd_rank(std::string& detail) {
  auto res = semi_whittaker_dim(2, 3, 0, Partition({2, 1}));
  detail = "(2,3,0,(2,1)) = " + to_string(res.dim.kind) + " " + res.dim.description;
  return res.dim.kind == DimKind::Exact && res.dim.value == 1;
}

bool vanishing_compositions(std::string& detail) {
  int checked = 0;
  int wrong = 0;
  for (int r = 1; r <= 6; ++r) {
    for (const auto& lambda : compositions_of(r)) {
      if (!vanishes(2, lambda)) continue;
      ++checked;
      if (semi_whittaker_dim(2, 3, 0, lambda).dim.kind != DimKind::Zero) ++wrong;
    }
  }
  detail = std::to_string(checked) + " compositions with a part > 2, " + std::to_string(wrong) +
           " not Zero";
  return wrong == 0 && checked > 0;
}

bool hilbert_axioms(std::string& detail) {
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  for (auto [n, q] : std::vector<std::pair<int, long long>>{{2, 3}, {3, 7}, {4, 5}}) {
    auto rep = check_hilbert_axioms(FieldModel(n, q));
    checked += rep.checked;
    violations += rep.violations();
  }
  detail = std::to_string(checked) + " checks, " + std::to_string(violations) + " violations";
  return violations == 0;
}

bool cocycle_identity(std::string& detail) {
  std::ostringstream os;
  bool ok = true;
  for (auto [n, r, c] : std::vector<std::tuple<int, int, int>>{{2, 2, 0}, {2, 2, 1}, {3, 2, 0}}) {
    auto rep = check_cocycle_identity(params(n, c, r), CheckMode::Exhaustive());
    ok = ok && rep.violations.empty();
    os << "(" << n << "," << r << "," << c << "): " << rep.checked << " triples, "
       << rep.violations.size() << " violations; ";
  }
  detail = os.str();
  return ok;
}

bool block_compat(std::string& detail) {
  std::ostringstream os;
  bool ok = true;
  for (auto [n, c] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}, {3, 0}}) {
    auto rep = check_block_compatibility_exhaustive(params(n, c, 3), Partition({2, 1}));
    ok = ok && rep.violation_count == 0;
    os << "(n=" << n << ",c=" << c << "): " << rep.checked << " pairs, " << rep.violation_count
       << " violations; ";
  }
  detail = os.str();
  return ok;
}

bool center_lemmas(std::string& detail) {
  std::vector<std::tuple<int, int, int>> cases;
  for (int n = 2; n <= 3; ++n) {
    for (int r = 1; r <= 3; ++r) {
      for (int c = 0; c < n; ++c) cases.push_back({n, r, c});
    }
  }
  if (fits_budget(3, 2 * 4 + 1)) {
    cases.push_back({3, 4, 0});
  } else {
    cases.push_back({3, 2, 1});
  }
  int bad = 0;
  for (const auto& [n, r, c] : cases) {
    CoverGroup g(params(n, c, r));
    if (!(center_bruteforce(g) == named_subgroup(g, "Z"))) ++bad;
    if (!(center_bruteforce(g, named_subgroup(g, "sq")) == named_subgroup(g, "Zn"))) ++bad;
  }
  detail = std::to_string(cases.size()) + " covers, " + std::to_string(bad) + " mismatches";
  return bad == 0;
}

bool maximal_abelian(std::string& detail) {
  int checked = 0;
  int bad = 0;
  for (auto [n, r] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    for (int c = 0; c < n; ++c) {
      CoverGroup g(params(n, c, r));
      checked += 2;
      if (!is_maximal_abelian(g, named_subgroup(g, "std"), named_subgroup(g, "full"))) ++bad;
      if (!is_maximal_abelian(g, named_subgroup(g, "zn_sq_o"), named_subgroup(g, "sq"))) ++bad;
    }
  }
  detail = std::to_string(checked) + " checks, " + std::to_string(bad) + " failures";
  return bad == 0;
}

bool orbit_attachment(std::string& detail) {
  long long scanned = 0;
  long long bad = 0;
  for (int n = 2; n <= 5; ++n) {
    for (int r = 1; r <= 12; ++r) {
      const Partition theta = theta_orbit(n, r);
      for (const auto& p : partitions_of(r)) {
        ++scanned;
        auto d = dominance_compare(p, theta);
        if ((d == Dominance::Greater || d == Dominance::Incomparable) && p[0] <= n) ++bad;
      }
    }
  }
  Partition o({3, 3, 1});
  bool vectors = orbit_weights(o, WeightVariant::Standard) == WeightVector{2, 2, 0, 0, 0, -2, -2} &&
                 orbit_weights(o, WeightVariant::Prime) == WeightVector{2, 0, -2, 2, 0, 0, -2};
  detail = std::to_string(scanned) + " partitions scanned, " + std::to_string(bad) +
           " counterexamples; (3,3,1) weight vectors " + (vectors ? "match" : "differ");
  return bad == 0 && vectors;
}

// Single-step corruptions that check_trace must reject.
std::vector<DerivationTrace> mutations(const DerivationTrace& t) {
  std::vector<DerivationTrace> out;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const Step& s = t.steps[i];
    if (s.out && !(*s.out == s.in)) {
      DerivationTrace m = t;
      m.steps[i].out = s.in;
      out.push_back(std::move(m));
    }
    if (auto* ax = std::get_if<AxiomEvidence>(&s.evidence)) {
      DerivationTrace m = t;
      std::get<AxiomEvidence>(m.steps[i].evidence).claim =
          ax->claim == Status::Vanishing ? Status::Nonvanishing : Status::Vanishing;
      out.push_back(std::move(m));
    }
    if (std::holds_alternative<ExpandEvidence>(s.evidence)) {
      DerivationTrace m = t;
      std::get<ExpandEvidence>(m.steps[i].evidence).witnesses.clear();
      out.push_back(std::move(m));
    }
    if (auto* ex = std::get_if<ExchangeEvidence>(&s.evidence)) {
      // zero the character on the pairing roots
      for (const Root& x : ex->X) {
        for (const Root& y : ex->Y) {
          auto sum = root_sum(x, y);
          if (!sum || !s.in.character().at(*sum).nonzero_tag()) continue;
          DerivationTrace m = t;
          Character chi = s.in.character();
          chi.set(*sum, {Tag::Zero, 0});
          m.steps[i].in = UnipotentConfig(s.in.rank(), s.in.roots(), chi);
          out.push_back(std::move(m));
        }
      }
    }
  }
  return out;
}

bool derivation_engine(std::string& detail) {
  int traces = 0;
  int failed = 0;
  int mutants = 0;
  int accepted_mutants = 0;
  for (int n = 2; n <= 4; ++n) {
    for (int r = 1; r <= 10; ++r) {
      for (const auto& p : partitions_of(r)) {
        if (!(p[0] > n || p == theta_orbit(n, r))) continue;
        auto t = derive_orbit_trace(n, p);
        ++traces;
        if (!check_trace(t).ok()) ++failed;
        if (r <= 7) {
          for (const auto& m : mutations(t)) {
            ++mutants;
            if (check_trace(m).ok()) ++accepted_mutants;
          }
        }
      }
    }
  }
  auto chain = exchange_chain(Partition({3, 1}));
  bool one_step = false;
  if (chain.size() == 1) {
    const auto& ev = std::get<ExchangeEvidence>(chain[0].evidence);
    auto q = verify_quadruple(chain[0].in, ev.C, ev.X, ev.Y);
    one_step = q.ok() && chain[0].out &&
               *chain[0].out == orbit_config(Partition({3, 1}), OrbitConfigVariant::U_O);
  }
  detail = std::to_string(traces) + " traces, " + std::to_string(failed) + " rejected; " +
           std::to_string(mutants) + " mutants, " + std::to_string(accepted_mutants) +
           " accepted; (3,1) one-step chain " + (one_step ? "verified" : "failed");
  return failed == 0 && accepted_mutants == 0 && mutants > 0 && one_step;
}

std::int64_t block_index_product(const FieldModel& model, int c, const Partition& lambda,
                                 const std::string& big, const std::string& small) {
  std::int64_t prod = 1;
  for (int r_i : lambda.parts()) {
    CoverGroup b(CocycleParams(model, c, r_i));
    prod *= index(named_subgroup(b, big), named_subgroup(b, small));
  }
  return prod;
}

bool index_identities(std::string& detail) {
  int checked = 0;
  int bad = 0;
  for (int n = 2; n <= 3; ++n) {
    FieldModel model(n, first_tame_prime(n));
    for (const auto& parts : std::vector<std::vector<int>>{{2, 1}, {2, 2}}) {
      Partition lambda(parts);
      for (int c = 0; c < n; ++c) {
        CoverGroup g(CocycleParams(model, c, lambda.size()));
        auto full = named_subgroup(g, "full");
        auto sq_m = named_subgroup(g, "sq_M", lambda);
        std::int64_t sq_ratio_num = block_index_product(model, c, lambda, "full", "sq");
        std::int64_t o_ratio_num = block_index_product(model, c, lambda, "full", "T_o");
        std::int64_t star_num = block_index_product(model, c, lambda, "sq", "zn_sq_o");
        checked += 3;
        if (sq_ratio_num != index(full, sq_m)) ++bad;
        if (o_ratio_num != index(full, named_subgroup(g, "T_o"))) ++bad;
        if (star_num != index(sq_m, named_subgroup(g, "zn_M_sq_M_o", lambda))) ++bad;
      }
    }
  }
  detail = std::to_string(checked) + " ratios, " + std::to_string(bad) + " different from 1";
  return bad == 0;
}

}  // namespace

std::vector<Criterion> acceptance_criteria() {
  return {
      {1, "multiplicity one for (n^m)", 120 * 5, multiplicity_one},
      {2, "n=2 odd rank (2,1)", 10, odd_rank},
      {3, "vanishing for parts > n", 60, vanishing_compositions},
      {4, "Hilbert symbol axioms", 5, hilbert_axioms},
      {5, "2-cocycle identity", 120, cocycle_identity},
      {6, "block compatibility", 120, block_compat},
      {7, "center lemmas", 300, center_lemmas},
      {8, "maximal abelian subgroups", 300, maximal_abelian},
      {9, "orbit attachment", 30, orbit_attachment},
      {10, "derivation engine", 120, derivation_engine},
      {11, "index identities", 120, index_identities},
  };
}

CriterionResult run_criterion(const Criterion& c) {
  CriterionResult res{c.id, c.name, false, "", 0, c.limit_seconds};
  auto t0 = std::chrono::steady_clock::now();
  try {
    res.passed = c.body(res.detail);
  } catch (const std::exception& e) {
    res.passed = false;
    res.detail = std::string("error: ") + e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (res.seconds > c.limit_seconds) {
    res.passed = false;
    res.detail += " (over the time limit)";
  }
  return res;
}

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  for (const auto& c : acceptance_criteria()) out.push_back(run_criterion(c));
  return out;
}

}  // namespace metaplectic
