#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metaplectic/cocycle.hpp"
#include "metaplectic/partitions.hpp"

namespace metaplectic {

/// The finite group T~ / s(T^n). Elements are encoded as integers:
///   torus index  t = sum_i (v_i + n u_i) n^{2i}
///   element      x = t * n + zeta
/// where (v_i, u_i) is the class of the i-th diagonal entry and zeta is the
/// mu_n exponent. s(T^n) is central and meets mu_n trivially, so commutators,
/// centers and indices of subgroups containing it all descend to this quotient.
class CoverGroup {
 public:
  explicit CoverGroup(CocycleParams params);

  const CocycleParams& params() const { return params_; }
  int n() const { return params_.n(); }
  int rank() const { return params_.r; }
  std::int64_t order() const { return order_; }
  std::int64_t torus_count() const { return torus_count_; }

  std::int64_t mult(std::int64_t a, std::int64_t b) const;
  std::int64_t inverse(std::int64_t a) const;
  std::int64_t identity() const { return 0; }
  bool commute(std::int64_t a, std::int64_t b) const;

  std::int64_t torus_of(std::int64_t x) const { return x / n(); }
  int zeta_of(std::int64_t x) const { return static_cast<int>(x % n()); }
  std::int64_t element(std::int64_t t, int zeta) const { return t * n() + zeta; }

  /// Class (v_i, u_i) of entry i of torus index t.
  std::pair<int, int> entry(std::int64_t t, int i) const;
  std::int64_t torus_index(const std::vector<std::pair<int, int>>& classes) const;
  std::vector<std::pair<int, int>> classes(std::int64_t t) const;
  std::int64_t encode(const TorusElement& t, int zeta) const;

  int sigma(std::int64_t t, std::int64_t t2) const;
  /// sigma(t,t') - sigma(t',t).
  int pairing(std::int64_t t, std::int64_t t2) const;
  std::int64_t torus_mult(std::int64_t t, std::int64_t t2) const;
  std::int64_t torus_inverse(std::int64_t t) const;

 private:
  int h(int k, int k2) const { return table_[k * nn_ + k2]; }
  const std::uint16_t* digits(std::int64_t t) const { return &digits_[t * (params_.r + 1)]; }

  CocycleParams params_;
  int nn_;
  std::int64_t torus_count_;
  std::int64_t order_;
  std::vector<int> table_;  // Hilbert symbol on class digits k = v + n u
  // per torus index: r entry digits followed by the determinant digit
  std::vector<std::uint16_t> digits_;
};

CoverGroup build_cover(const CocycleParams& p);

/// An explicit member set, with a generating set found while validating it.
class Subgroup {
 public:
  Subgroup() = default;

  const std::string& name() const { return name_; }
  std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }
  bool contains(std::int64_t x) const { return members_[x]; }
  const std::vector<std::int64_t>& elements() const { return elements_; }
  const std::vector<std::int64_t>& generators() const { return generators_; }
  void rename(std::string name) { name_ = std::move(name); }

  /// Throws NotASubgroup unless `members` is closed under the group law.
  static Subgroup from_members(const CoverGroup& g, std::vector<bool> members, std::string name);
  static Subgroup generated(const CoverGroup& g, const std::vector<std::int64_t>& gens,
                            std::string name);
  /// {(t, zeta) : pred(t)}; the torus predicate must cut out a subgroup of classes.
  static Subgroup from_torus_predicate(const CoverGroup& g,
                                       const std::function<bool(std::int64_t)>& pred,
                                       std::string name);

  bool operator==(const Subgroup& o) const { return members_ == o.members_; }

 private:
  friend struct Closure;
  std::string name_;
  std::vector<bool> members_;
  std::vector<std::int64_t> elements_;
  std::vector<std::int64_t> generators_;
};

/// Names: full, mu, Z, Zn, T_o, sq, sq_o, std, zn_sq_o. With a Levi composition
/// also Z_M, Zn_M, sq_M, sq_M_o, zn_M_sq_M_o. Throws UnknownName.
Subgroup named_subgroup(const CoverGroup& g, const std::string& name,
                        const std::optional<Partition>& levi = std::nullopt);
std::vector<std::string> subgroup_names();

/// Every element commuting with all of the group.
Subgroup center_bruteforce(const CoverGroup& g);
/// Elements of `ambient` commuting with all of `ambient`.
Subgroup center_bruteforce(const CoverGroup& g, const Subgroup& ambient);

bool is_abelian(const CoverGroup& g, const Subgroup& s);
/// Throws NotASubgroup if s is not contained in ambient.
bool is_maximal_abelian(const CoverGroup& g, const Subgroup& s, const Subgroup& ambient);
/// Greedily adds the smallest commuting element of ambient until maximal.
Subgroup extend_to_maximal_abelian(const CoverGroup& g, const Subgroup& s, const Subgroup& ambient);

bool is_contained(const Subgroup& b, const Subgroup& a);
/// |A| / |B|, throwing NotContained unless B <= A.
std::int64_t index(const Subgroup& a, const Subgroup& b);
Subgroup intersection(const CoverGroup& g, const Subgroup& a, const Subgroup& b);
/// The subgroup generated by A and B (equal to AB when that is a subgroup).
Subgroup product(const CoverGroup& g, const Subgroup& a, const Subgroup& b);

}  // namespace metaplectic
