#include <doctest.h>

#include <cmath>

#include "metaplectic/errors.hpp"
#include "metaplectic/torus_cover.hpp"

using namespace metaplectic;

namespace {

CocycleParams params(int n, int c, int r) {
  return CocycleParams(FieldModel(n, tame_primes(n, 1).front()), c, r);
}

TorusElement element_of(const CoverGroup& g, std::int64_t t) {
  TorusElement out;
  for (auto [v, u] : g.classes(t)) out.push_back({v, u});
  return out;
}

// Central torus classes by a direct scan of the commutator pairing.
std::vector<bool> central_classes(const CoverGroup& g, const std::vector<std::int64_t>& ambient) {
  std::vector<bool> out(g.torus_count(), false);
  for (auto t : ambient) {
    bool central = true;
    for (auto t2 : ambient) {
      if (commutator_pairing(g.params(), element_of(g, t), element_of(g, t2)) != 0) {
        central = false;
        break;
      }
    }
    out[t] = central;
  }
  return out;
}

std::vector<std::int64_t> torus_part(const CoverGroup& g, const Subgroup& s) {
  std::vector<std::int64_t> out;
  for (auto x : s.elements()) {
    if (g.zeta_of(x) == 0) out.push_back(g.torus_of(x));
  }
  return out;
}

}  // namespace

TEST_CASE("cover construction") {
  CHECK(build_cover(params(2, 0, 2)).order() == 32);
  CHECK(build_cover(params(3, 0, 2)).order() == 243);
  CoverGroup g(params(2, 0, 2));
  const FieldElement pi{1, 0};
  const FieldElement one{0, 0};
  auto a = g.encode({pi, one}, 0);
  auto b = g.encode({one, pi}, 0);
  CHECK(g.mult(a, b) == g.encode({pi, pi}, 1));
  CHECK(g.mult(b, a) == g.encode({pi, pi}, 0));
  CHECK_FALSE(g.commute(a, b));
}

TEST_CASE("group axioms") {
  for (auto [n, r, c] : std::vector<std::tuple<int, int, int>>{{2, 2, 0}, {2, 2, 1}, {3, 2, 1}, {2, 3, 1}}) {
    CoverGroup g(params(n, c, r));
    for (std::int64_t x = 0; x < g.order(); x += 3) {
      CHECK(g.mult(x, g.identity()) == x);
      CHECK(g.mult(x, g.inverse(x)) == g.identity());
      CHECK(g.commute(x, g.element(0, 1)));
      for (std::int64_t y = 0; y < g.order(); y += 5) {
        for (std::int64_t z = 0; z < g.order(); z += 11) {
          CHECK(g.mult(g.mult(x, y), z) == g.mult(x, g.mult(y, z)));
        }
      }
    }
  }
}

TEST_CASE("named subgroup examples") {
  CoverGroup g(params(3, 0, 2));
  CHECK(named_subgroup(g, "Z").order() == 3);
  CHECK(named_subgroup(g, "mu").order() == 3);
  CoverGroup g2(params(2, 0, 2));
  CHECK(named_subgroup(g2, "T_o").order() == 8);
  CoverGroup g3(params(3, 0, 4));
  CHECK(named_subgroup(g3, "Z").order() == 27);
  for (const auto& name : subgroup_names()) {
    CHECK(named_subgroup(g2, name, Partition::composition({1, 1})).order() > 0);
  }
  try {
    named_subgroup(g2, "bogus");
    FAIL("expected UnknownName");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownName);
  }
  CHECK_THROWS_AS(named_subgroup(g2, "sq_M"), Error);
  CHECK_THROWS_AS(named_subgroup(g2, "sq_M", Partition({3})), Error);
}

TEST_CASE("subgroup validation") {
  CoverGroup g(params(2, 0, 2));
  std::vector<bool> members(g.order(), false);
  members[0] = true;
  members[g.encode({{1, 0}, {0, 0}}, 0)] = true;
  members[g.encode({{0, 0}, {1, 0}}, 0)] = true;
  try {
    Subgroup::from_members(g, members, "bad");
    FAIL("expected NotASubgroup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotASubgroup);
  }
  auto mu = named_subgroup(g, "mu");
  auto full = named_subgroup(g, "full");
  CHECK(index(full, full) == 1);
  CHECK(index(full, mu) == 16);
  try {
    index(mu, full);
    FAIL("expected NotContained");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotContained);
  }
  CHECK(intersection(g, named_subgroup(g, "T_o"), named_subgroup(g, "sq")).order() <=
        named_subgroup(g, "T_o").order());
}

TEST_CASE("centers") {
  for (int n = 2; n <= 3; ++n) {
    for (int r = 1; r <= 3; ++r) {
      for (int c = 0; c < n; ++c) {
        CoverGroup g(params(n, c, r));
        auto full = named_subgroup(g, "full");
        auto sq = named_subgroup(g, "sq");
        auto center = center_bruteforce(g);
        auto center_sq = center_bruteforce(g, sq);
        CHECK(center == named_subgroup(g, "Z"));
        CHECK(center_sq == named_subgroup(g, "Zn"));
        auto expected = central_classes(g, torus_part(g, full));
        for (std::int64_t t = 0; t < g.torus_count(); ++t) {
          CHECK(center.contains(g.element(t, 0)) == expected[t]);
        }
        auto expected_sq = central_classes(g, torus_part(g, sq));
        for (auto t : torus_part(g, sq)) CHECK(center_sq.contains(g.element(t, 0)) == expected_sq[t]);
      }
    }
  }
  CoverGroup g(params(3, 0, 4));
  auto center = center_bruteforce(g);
  CHECK(is_contained(named_subgroup(g, "Z"), center));
  CHECK(center == named_subgroup(g, "Z"));
}

TEST_CASE("maximal abelian subgroups") {
  for (auto [n, r] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    for (int c = 0; c < n; ++c) {
      CoverGroup g(params(n, c, r));
      auto full = named_subgroup(g, "full");
      auto sq = named_subgroup(g, "sq");
      auto st = named_subgroup(g, "std");
      auto zs = named_subgroup(g, "zn_sq_o");
      CHECK(is_maximal_abelian(g, st, full));
      CHECK(is_maximal_abelian(g, zs, sq));
      CHECK_FALSE(is_maximal_abelian(g, named_subgroup(g, "mu"), full));
      CHECK(is_contained(center_bruteforce(g), st));
      CHECK(is_contained(center_bruteforce(g, sq), zs));
      auto grown = extend_to_maximal_abelian(g, center_bruteforce(g), full);
      CHECK(is_maximal_abelian(g, grown, full));
      CHECK(grown.order() == st.order());
      auto grown_sq = extend_to_maximal_abelian(g, center_bruteforce(g, sq), sq);
      CHECK(grown_sq.order() == zs.order());
    }
  }
  CoverGroup g(params(2, 0, 2));
  CHECK(index(named_subgroup(g, "full"), named_subgroup(g, "std")) == 4);
  CHECK(index(named_subgroup(g, "std"), named_subgroup(g, "T_o")) == 1);
  CHECK_THROWS_AS(is_maximal_abelian(g, named_subgroup(g, "full"), named_subgroup(g, "sq")), Error);
}

TEST_CASE("blockwise index identities") {
  for (const auto& lambda : {Partition::composition({2, 1}), Partition({2, 2}), Partition({1, 1, 1})}) {
    for (int n = 2; n <= 3; ++n) {
      for (int c = 0; c < n; ++c) {
        if (std::pow(n, 2 * lambda.size() + 1) > 2e6) continue;
        CoverGroup g(params(n, c, lambda.size()));
        std::int64_t prod_sq = 1;
        std::int64_t prod_o = 1;
        for (int part : lambda.parts()) {
          CoverGroup b(params(n, c, part));
          auto full = named_subgroup(b, "full");
          prod_sq *= index(full, named_subgroup(b, "sq"));
          prod_o *= index(full, named_subgroup(b, "T_o"));
        }
        auto full = named_subgroup(g, "full");
        CHECK(index(full, named_subgroup(g, "sq_M", lambda)) == prod_sq);
        CHECK(index(full, named_subgroup(g, "T_o")) == prod_o);
      }
    }
  }
}
