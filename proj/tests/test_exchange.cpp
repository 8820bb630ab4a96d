#include <doctest.h>

#include <algorithm>

#include "metaplectic/errors.hpp"
#include "metaplectic/exchange.hpp"
#include "metaplectic/jacquet.hpp"

using namespace metaplectic;

namespace {

RootSet rs(std::initializer_list<Root> roots) { return RootSet(roots); }

Character one_on(std::initializer_list<Root> roots) {
  Character chi;
  for (const Root& a : roots) chi.set(a, {Tag::One, 0});
  return chi;
}

UnipotentConfig v2_31() { return orbit_config(Partition({3, 1}), OrbitConfigVariant::V2); }

bool has_condition(const QuadrupleCheck& c, char cond) {
  return std::any_of(c.violations.begin(), c.violations.end(),
                     [&](const Violation& v) { return v.condition == cond; });
}

DerivationTrace vanishing_axiom_trace(int n, const UnipotentConfig& start) {
  DerivationTrace t;
  t.n = n;
  t.start = start;
  UnipotentConfig scaled = apply_torus_scaling(start);
  t.steps.push_back({Rule::Conjugate, start, scaled, ConjugateEvidence{{}, true}});
  t.steps.push_back({Rule::Axiom, scaled, std::nullopt, AxiomEvidence{Status::Vanishing}});
  t.terminal = {Status::Vanishing, Equivalence::Isomorphism, scaled};
  return t;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(UnipotentConfig(3, rs({{1, 2}, {2, 3}}), Character()), Error);
  CHECK_THROWS_AS(UnipotentConfig(3, rs({{1, 2}, {2, 1}}), Character()), Error);
  CHECK_THROWS_AS(UnipotentConfig(3, positive_roots(3), one_on({{1, 3}})), Error);
  CHECK_THROWS_AS(UnipotentConfig(2, rs({{1, 2}}), one_on({{1, 3}})), Error);
  CHECK_NOTHROW(UnipotentConfig(3, positive_roots(3), one_on({{1, 2}, {2, 3}})));
}

TEST_CASE("quadruple for the (3,1) orbit") {
  const auto A = v2_31();
  CHECK(A.roots() == rs({{1, 2}, {2, 3}, {1, 3}, {1, 4}, {4, 3}}));
  const RootSet C = rs({{1, 2}, {2, 3}, {1, 3}, {1, 4}});
  auto check = verify_quadruple(A, C, rs({{4, 3}}), rs({{2, 4}}));
  CHECK(check.ok());
  REQUIRE(check.quadruple.has_value());
  auto b = apply_exchange(*check.quadruple, A);
  CHECK(b.roots() == orbit_config(Partition({3, 1}), OrbitConfigVariant::U_O).roots());
  CHECK(b.roots().size() == A.roots().size());
  CHECK(b.character() == A.character());

  auto back = verify_quadruple(b, C, rs({{2, 4}}), rs({{4, 3}}));
  REQUIRE(back.ok());
  CHECK(apply_exchange(*back.quadruple, b) == A);

  CHECK_THROWS_AS(apply_exchange(*check.quadruple, b), Error);
  auto chain = exchange_chain(Partition({3, 1}));
  REQUIRE(chain.size() == 1);
  CHECK(chain.front().out == orbit_config(Partition({3, 1}), OrbitConfigVariant::U_O));
}

TEST_CASE("quadruple violations") {
  const auto U = UnipotentConfig(3, positive_roots(3), one_on({{1, 2}}));
  auto nonabelian = verify_quadruple(U, rs({{1, 3}}), rs({{1, 2}, {2, 3}}), rs({}));
  CHECK(has_condition(nonabelian, 'b'));
  auto empty_y = verify_quadruple(v2_31(), rs({{1, 2}, {2, 3}, {1, 3}, {1, 4}}), rs({{4, 3}}), rs({}));
  CHECK(has_condition(empty_y, 'e'));
  auto unpaired = verify_quadruple(UnipotentConfig(v2_31().rank(), v2_31().roots(), one_on({{1, 2}})),
                                   rs({{1, 2}, {2, 3}, {1, 3}, {1, 4}}), rs({{4, 3}}), rs({{2, 4}}));
  CHECK(has_condition(unpaired, 'e'));
  auto degenerate = verify_quadruple(U, U.roots(), rs({}), rs({}));
  CHECK(degenerate.ok());
  CHECK(apply_exchange(*degenerate.quadruple, U) == U);
}

TEST_CASE("conjugation") {
  const auto cfg = v2_31();
  CHECK(apply_conjugate(cfg, {1, 2, 3, 4}) == cfg);
  auto swapped = apply_conjugate(cfg, {1, 2, 4, 3});
  CHECK(swapped.contains({3, 4}));
  CHECK(apply_conjugate(swapped, {1, 2, 4, 3}) == cfg);
  CHECK_THROWS_AS(apply_conjugate(cfg, {1, 1, 2, 3}), Error);

  Character eps;
  eps.set({1, 2}, {Tag::NonzeroParam, 1});
  UnipotentConfig one(2, rs({{1, 2}}), eps);
  CHECK(apply_torus_scaling(one).character().at({1, 2}).tag == Tag::One);

  const Partition o({3, 3, 1});
  auto prime = weighted_roots(orbit_weights(o, WeightVariant::Prime), 2);
  auto standard = weighted_roots(orbit_weights(o, WeightVariant::Standard), 2);
  auto moved = apply_conjugate(UnipotentConfig(7, prime, Character()), prime_to_standard_permutation(o));
  CHECK(moved.roots() == standard);
}

TEST_CASE("expansion") {
  UnipotentConfig cfg(3, rs({{1, 2}, {1, 3}}), one_on({{1, 2}}));
  Character chi = one_on({{1, 2}});
  chi.set({2, 3}, {Tag::NonzeroParam, 1});
  UnipotentConfig start(3, positive_roots(3), chi);
  auto witness = vanishing_axiom_trace(2, start);
  REQUIRE(check_trace(witness).ok());
  auto out = apply_expand(cfg, rs({{2, 3}}), {witness});
  CHECK(out == UnipotentConfig(3, positive_roots(3), one_on({{1, 2}})));
  CHECK(apply_expand(cfg, rs({}), {}) == cfg);
  try {
    apply_expand(cfg, rs({{2, 3}}), {});
    FAIL("expected IncompleteWitnesses");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompleteWitnesses);
  }
  auto nonvanishing = witness;
  nonvanishing.n = 3;
  try {
    apply_expand(cfg, rs({{2, 3}}), {nonvanishing});
    FAIL("expected IncompleteWitnesses");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompleteWitnesses);
  }
}

TEST_CASE("axiom-only traces") {
  for (const auto& lambda : compositions_of(4)) {
    for (int n = 2; n <= 3; ++n) {
      UnipotentConfig u(4, positive_roots(4), semi_whittaker_character(lambda));
      DerivationTrace t;
      t.n = n;
      t.start = u;
      const Status s = vanishes(n, lambda) ? Status::Vanishing : Status::Nonvanishing;
      t.steps.push_back({Rule::Axiom, u, std::nullopt, AxiomEvidence{s}});
      t.terminal = {s, Equivalence::Isomorphism, u};
      CHECK(check_trace(t).ok());
      t.steps.back().evidence = AxiomEvidence{s == Status::Vanishing ? Status::Nonvanishing : Status::Vanishing};
      CHECK_FALSE(check_trace(t).ok());
    }
  }
}

TEST_CASE("derived traces") {
  auto t31 = derive_orbit_trace(2, Partition({3, 1}));
  CHECK(t31.terminal.status == Status::Vanishing);
  CHECK(check_trace(t31).ok());
  auto t22 = derive_orbit_trace(2, Partition({2, 2}));
  CHECK(t22.terminal.status == Status::Nonvanishing);
  CHECK(t22.terminal.equivalence == Equivalence::Isomorphism);
  REQUIRE(t22.terminal.config.has_value());
  CHECK(*t22.terminal.config == UnipotentConfig(4, positive_roots(4), semi_whittaker_character(Partition({2, 2}))));
  auto t331 = derive_orbit_trace(3, Partition({3, 3, 1}));
  CHECK(t331.terminal.status == Status::Nonvanishing);
  CHECK(check_trace(t331).ok());
  try {
    derive_orbit_trace(3, Partition({2, 2}));
    FAIL("expected UnsupportedOrbit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedOrbit);
  }
}

TEST_CASE("every supported orbit derives a checked trace") {
  for (int n = 2; n <= 4; ++n) {
    for (int r = 1; r <= 8; ++r) {
      const Partition theta = theta_orbit(n, r);
      for (const auto& o : partitions_of(r)) {
        if (!(o == theta) && o[0] <= n) continue;
        auto t = derive_orbit_trace(n, o);
        CHECK(check_trace(t).ok());
        CHECK(t.terminal.status == (o[0] > n ? Status::Vanishing : Status::Nonvanishing));
        bool same_parity = std::all_of(o.parts().begin(), o.parts().end(),
                                       [&](int p) { return p % 2 == o[0] % 2; });
        if (same_parity) CHECK(t.terminal.equivalence == Equivalence::Isomorphism);
      }
    }
  }
}

TEST_CASE("exchange chains end at U_O for same-parity orbits") {
  for (int r = 1; r <= 9; ++r) {
    for (const auto& o : partitions_of(r)) {
      bool same_parity = std::all_of(o.parts().begin(), o.parts().end(),
                                     [&](int p) { return p % 2 == o[0] % 2; });
      if (!same_parity) continue;
      auto chain = exchange_chain(o);
      const UnipotentConfig end = chain.empty() ? orbit_config(o, OrbitConfigVariant::V2) : *chain.back().out;
      CHECK(end == orbit_config(o, OrbitConfigVariant::U_O));
      for (const auto& s : chain) CHECK(s.out->roots().size() == s.in.roots().size());
    }
  }
}

TEST_CASE("mutated exchange step reports condition (e)") {
  auto t = derive_orbit_trace(2, Partition({3, 1}));
  REQUIRE(t.steps.front().rule == Rule::RootExchange);
  auto& step = t.steps.front();
  Character chi = step.in.character();
  chi.set({2, 3}, {Tag::Zero, 0});
  step.in = UnipotentConfig(step.in.rank(), step.in.roots(), chi);
  t.start = step.in;
  auto chk = check_trace(t);
  CHECK_FALSE(chk.ok());
  bool saw_e = std::any_of(chk.diagnostics.begin(), chk.diagnostics.end(),
                           [](const Diagnostic& d) { return d.message.find("condition (e)") != std::string::npos; });
  CHECK(saw_e);
}

TEST_CASE("classification") {
  auto all = classify_all(2, 4);
  for (const auto& c : all) {
    if (c.orbit == Partition({4}) || c.orbit == Partition({3, 1})) CHECK(c.status == OrbitStatus::Vanishing);
    if (c.orbit == Partition({2, 2})) CHECK(c.status == OrbitStatus::Nonvanishing);
    if (c.trace) CHECK(check_trace(*c.trace).ok());
  }
  CHECK(classify_orbit_status(5, Partition({3})).status == OrbitStatus::Nonvanishing);
  CHECK(classify_orbit_status(2, Partition({2})).status == OrbitStatus::Nonvanishing);
  CHECK(classify_orbit_status(2, Partition({1, 1})).status == OrbitStatus::Dominated);
  for (int n = 2; n <= 4; ++n) {
    for (int r = 2; r <= 8; ++r) {
      for (int m = 1; m <= r; ++m) {
        std::vector<int> parts{m};
        parts.resize(r - m + 1, 1);
        auto c = classify_orbit_status(n, Partition(parts));
        CHECK((c.status == OrbitStatus::Vanishing) == (m > n));
      }
    }
  }
}
