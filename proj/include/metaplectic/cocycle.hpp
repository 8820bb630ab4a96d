#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "metaplectic/local_field.hpp"
#include "metaplectic/partitions.hpp"

namespace metaplectic {

/// diag(t_1, ..., t_r).
using TorusElement = std::vector<FieldElement>;

struct CocycleParams {
  FieldModel model;
  int c = 0;  // modulus class, 0 <= c < n
  int r = 1;

  CocycleParams(FieldModel m, int c_, int r_);
  int n() const { return model.n(); }
};

/// Restriction of the block-compatible cocycle to the torus, as a Z/n exponent:
///   sum_{i<j} (t_i, t'_j) + c * sum_{i,j} (t_i, t'_j).
int sigma_torus(const CocycleParams& p, const TorusElement& t, const TorusElement& t2);

/// sigma(t,t') - sigma(t',t): the commutator of the lifts s(t), s(t').
int commutator_pairing(const CocycleParams& p, const TorusElement& t, const TorusElement& t2);

TorusElement scalar(int r, const FieldElement& a);
FieldElement determinant(const TorusElement& t);

struct CocycleViolation {
  std::vector<TorusElement> triple;
  int lhs = 0;
  int rhs = 0;
};

struct CocycleReport {
  std::int64_t checked = 0;
  std::vector<CocycleViolation> violations;
};

struct CheckMode {
  bool exhaustive = true;
  std::int64_t samples = 0;
  std::uint64_t seed = 0x5eed;

  static CheckMode Exhaustive() { return {}; }
  static CheckMode Sample(std::int64_t k, std::uint64_t seed = 0x5eed) { return {false, k, seed}; }
};

/// One representative per class of (F^x/F^{x n})^r: entries pi^v omega^u, 0 <= v,u < n.
std::vector<TorusElement> torus_class_representatives(const CocycleParams& p);

/// sigma(g,h) + sigma(gh,k) = sigma(g,hk) + sigma(h,k) over class triples.
/// Exhaustive mode throws BudgetExceeded when n^{6r} exceeds the budget.
CocycleReport check_cocycle_identity(const CocycleParams& p, CheckMode mode);

/// sigma_r(t,t') against the blockwise sum plus the determinant cross terms
/// (c+1)(det g_i, det g'_j) + c (det g_j, det g'_i) for i < j.
bool check_block_compatibility(const CocycleParams& p, const Partition& lambda,
                               const TorusElement& t, const TorusElement& t2);

struct BlockCompatReport {
  std::int64_t checked = 0;
  std::int64_t violation_count = 0;
  std::vector<std::pair<TorusElement, TorusElement>> violations;  // first few only
};

/// Block compatibility over all class pairs (budget-checked).
BlockCompatReport check_block_compatibility_exhaustive(const CocycleParams& p,
                                                       const Partition& lambda);

}  // namespace metaplectic
