#include <doctest.h>

#include <cmath>
#include <random>

#include "metaplectic/cocycle.hpp"
#include "metaplectic/errors.hpp"

using namespace metaplectic;

namespace {

// Independent evaluation of the torus cocycle straight from the symbol.
int sigma_oracle(const FieldModel& m, int c, const TorusElement& t, const TorusElement& t2) {
  long long s = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t2.size(); ++j) {
      const int h = hilbert(m, t[i], t2[j]);
      s += c * h + (i < j ? h : 0);
    }
  }
  return mod(s, m.n());
}

TorusElement random_element(std::mt19937& rng, int r, int span) {
  std::uniform_int_distribution<int> d(-span, span);
  TorusElement t;
  for (int i = 0; i < r; ++i) t.push_back({d(rng), d(rng)});
  return t;
}

TorusElement mul(const TorusElement& a, const TorusElement& b) {
  TorusElement out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] * b[i]);
  return out;
}

}  // namespace

TEST_CASE("cocycle examples") {
  const FieldElement pi{1, 0};
  const FieldElement one{0, 0};
  CocycleParams p0(FieldModel(2, 3), 0, 2);
  CocycleParams p1(FieldModel(2, 3), 1, 2);
  CHECK(sigma_torus(p0, {pi, one}, {one, pi}) == 1);
  CHECK(sigma_torus(p1, {pi, one}, {one, pi}) == 0);
  CHECK(sigma_torus(p0, {{0, 1}, {0, 3}}, {{0, 5}, {0, 2}}) == 0);
  CHECK(commutator_pairing(p0, {pi, one}, {one, pi}) == 1);
  CHECK(commutator_pairing(p0, {pi, one}, {pi, one}) == 0);
  CHECK_THROWS_AS(sigma_torus(p0, {pi}, {one, pi}), Error);
  CHECK_THROWS_AS(CocycleParams(FieldModel(2, 3), 2, 2), Error);
  CHECK_THROWS_AS(CocycleParams(FieldModel(2, 3), 0, 0), Error);
}

TEST_CASE("scalar pairing vanishes when n divides r - 1 + 2cr") {
  CocycleParams p(FieldModel(3, 7), 0, 4);
  for (const auto& z : torus_class_representatives(CocycleParams(FieldModel(3, 7), 0, 1))) {
    for (const auto& t : torus_class_representatives(p)) {
      CHECK(commutator_pairing(p, scalar(4, z[0]), t) == 0);
    }
  }
}

TEST_CASE("sigma matches the symbol sum and is class invariant") {
  std::mt19937 rng(7);
  for (auto [n, q] : std::vector<std::pair<int, long long>>{{2, 3}, {3, 7}, {4, 5}}) {
    FieldModel m(n, q);
    for (int c = 0; c < n; ++c) {
      for (int r = 1; r <= 4; ++r) {
        CocycleParams p(m, c, r);
        for (int k = 0; k < 200; ++k) {
          auto t = random_element(rng, r, 9);
          auto t2 = random_element(rng, r, 9);
          auto nth = random_element(rng, r, 5);
          for (auto& e : nth) e = e.pow(n);
          CHECK(sigma_torus(p, t, t2) == sigma_oracle(m, c, t, t2));
          CHECK(sigma_torus(p, mul(t, nth), t2) == sigma_torus(p, t, t2));
          CHECK(sigma_torus(p, t, mul(t2, nth)) == sigma_torus(p, t, t2));
        }
      }
    }
  }
}

TEST_CASE("commutator pairing is alternating and bi-additive") {
  for (auto [n, r] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    FieldModel m(n, tame_primes(n, 1).front());
    for (int c = 0; c < n; ++c) {
      CocycleParams p(m, c, r);
      const auto reps = torus_class_representatives(p);
      for (const auto& a : reps) {
        CHECK(commutator_pairing(p, a, a) == 0);
        for (const auto& b : reps) {
          const int ab = commutator_pairing(p, a, b);
          CHECK(mod(ab + commutator_pairing(p, b, a), n) == 0);
          for (std::size_t k = 0; k < reps.size(); k += 7) {
            const auto& d = reps[k];
            CHECK(commutator_pairing(p, mul(a, d), b) == mod(ab + commutator_pairing(p, d, b), n));
          }
        }
      }
    }
  }
}

TEST_CASE("scalar commutator against determinant") {
  for (auto [n, r] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    FieldModel m(n, tame_primes(n, 1).front());
    for (int c = 0; c < n; ++c) {
      CocycleParams p(m, c, r);
      CocycleParams line(m, c, 1);
      for (const auto& a : torus_class_representatives(line)) {
        for (const auto& g : torus_class_representatives(p)) {
          const int lhs = mod(sigma_torus(p, g, scalar(r, a[0])) - sigma_torus(p, scalar(r, a[0]), g), n);
          CHECK(lhs == hilbert(m, determinant(g), a[0].pow(r - 1 + 2 * c * r)));
        }
      }
    }
  }
}

TEST_CASE("cocycle identity") {
  for (auto [n, c, r] : std::vector<std::tuple<int, int, int>>{{2, 0, 2}, {2, 1, 2}, {3, 1, 2}}) {
    CocycleParams p(FieldModel(n, tame_primes(n, 1).front()), c, r);
    auto rep = check_cocycle_identity(p, CheckMode::Exhaustive());
    CHECK(rep.checked == static_cast<std::int64_t>(std::pow(n, 6 * r)));
    CHECK(rep.violations.empty());
  }
  CocycleParams big(FieldModel(3, 7), 0, 3);
  auto sampled = check_cocycle_identity(big, CheckMode::Sample(5000, 11));
  CHECK(sampled.checked == 5000);
  CHECK(sampled.violations.empty());
  CHECK(check_cocycle_identity(big, CheckMode::Sample(50, 3)).checked ==
        check_cocycle_identity(big, CheckMode::Sample(50, 3)).checked);
}

TEST_CASE("cocycle identity budget") {
  CocycleParams huge(FieldModel(5, 11), 0, 4);
  try {
    check_cocycle_identity(huge, CheckMode::Exhaustive());
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("block compatibility") {
  CocycleParams p(FieldModel(2, 3), 0, 3);
  auto rep = check_block_compatibility_exhaustive(p, Partition::composition({2, 1}));
  CHECK(rep.checked == 4096);
  CHECK(rep.violation_count == 0);
  CHECK(check_block_compatibility_exhaustive(p, Partition({3})).violation_count == 0);
  CocycleParams p2(FieldModel(3, 7), 1, 2);
  CHECK(check_block_compatibility_exhaustive(p2, Partition({1, 1})).violation_count == 0);
  CHECK_THROWS_AS(check_block_compatibility(p, Partition({2}), {{1, 0}, {0, 0}, {0, 0}}, {{1, 0}, {0, 0}, {0, 0}}),
                  Error);
}
