#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metaplectic/partitions.hpp"

namespace metaplectic {

enum class DimKind { Zero, Exact, FiniteUnknown };
std::string to_string(DimKind k);

struct DimValue {
  DimKind kind = DimKind::Zero;
  std::int64_t value = 0;             // meaningful for Exact
  std::vector<int> unknown_blocks;    // 0-based block positions with undetermined d_i
  std::string description;            // symbolic form for FiniteUnknown

  static DimValue zero() { return {DimKind::Zero, 0, {}, "0"}; }
  static DimValue exact(std::int64_t v) { return {DimKind::Exact, v, {}, std::to_string(v)}; }
  static DimValue unknown(std::string what) { return {DimKind::FiniteUnknown, 0, {}, std::move(what)}; }

  bool operator==(const DimValue& o) const { return kind == o.kind && value == o.value; }
};

/// Whittaker dimension of the theta representation of one GL(r_i) block:
/// Zero if n <= r_i - 1; Exact(1) if n = r_i, or n = r_i + 1 with 2(c+1) = 0 mod n;
/// FiniteUnknown otherwise.
DimValue whittaker_dim_block(int n, int r_i, int c);

struct SemiWhittakerResult {
  DimValue dim;
  std::vector<DimValue> d_blocks;
  /// [T*_st,i : T_o,i] per block, and [T*_st : T_o] for the Levi. Empty when a
  /// block dimension vanished and the index computation was skipped.
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 1;
  /// Same quantities via a maximal abelian T_* and its square part.
  std::optional<std::vector<std::int64_t>> first_numerators;
  std::optional<std::int64_t> first_denominator;
};

/// (prod_i [T*_st,i : T_o,i] / [T*_st : T_o]) * prod_i d_i, with lambda an ordered
/// composition. `first_formula` additionally evaluates the index ratio through
/// [T_*,i : T_*,i^sq] / [T_* : T_*^sq]. Throws BudgetExceeded from the cover.
SemiWhittakerResult semi_whittaker_dim(int n, long long q, int c, const Partition& lambda,
                                       bool first_formula = false);

/// True iff some part exceeds n.
bool vanishes(int n, const Partition& lambda);

struct WssCertificate {
  bool holds = false;
  int a = 0;  // type (a, b) when it holds: orbit (a^b)
  int b = 0;
  Partition orbit{std::vector<int>{1}};
};

/// True iff n divides r; the orbit (n^{r/n}) is then rectangular of type (n, r/n).
WssCertificate wss_check(int n, int r);

}  // namespace metaplectic
