#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace metaplectic {

/// A root (i, j) of GL(r), 1-based, i != j. Positive iff i < j.
struct Root {
  int i = 0;
  int j = 0;

  bool positive() const { return i < j; }
  auto operator<=>(const Root&) const = default;
};

using RootSet = std::set<Root>;

/// (i,j) + (j,l) = (i,l); nullopt when the two roots do not compose.
std::optional<Root> compose(const Root& a, const Root& b);

/// Sum of two roots in either order, if it is a root.
std::optional<Root> root_sum(const Root& a, const Root& b);

bool is_closed(const RootSet& roots);
RootSet closure(const RootSet& roots);
/// No two members compose (the generated group is abelian).
bool is_abelian(const RootSet& roots);
/// All positive roots of GL(r).
RootSet positive_roots(int r);
std::string to_string(const Root& root);

enum class Tag { Zero, One, ArbitraryParam, NonzeroParam };

/// Symbolic coefficient of a character on one root subgroup.
struct Coef {
  Tag tag = Tag::Zero;
  int id = 0;  // parameter id; meaningful for the two Param tags only

  bool nonzero_tag() const { return tag != Tag::Zero; }
  bool surely_nonzero() const { return tag == Tag::One || tag == Tag::NonzeroParam; }
  auto operator<=>(const Coef&) const = default;
};

/// A character given by its values on root subgroups. Roots absent from the map
/// carry Zero; Zero entries are never stored.
class Character {
 public:
  Character() = default;

  Coef at(const Root& root) const;
  void set(const Root& root, Coef coef);
  const std::map<Root, Coef>& support() const { return support_; }

  bool operator==(const Character&) const = default;

 private:
  std::map<Root, Coef> support_;
};

/// A closed unipotent root set together with a character of the corresponding
/// group. Construction validates: roots lie in GL(rank), the set is closed under
/// composition and contains no pair {a, -a}, and the character is supported on
/// roots that are not sums of two member roots.
class UnipotentConfig {
 public:
  UnipotentConfig() = default;
  UnipotentConfig(int rank, RootSet roots, Character chi);

  int rank() const { return rank_; }
  const RootSet& roots() const { return roots_; }
  const Character& character() const { return chi_; }
  bool contains(const Root& root) const { return roots_.count(root) > 0; }

  bool operator==(const UnipotentConfig&) const = default;

  /// Reasons the data would be rejected by the constructor; empty when valid.
  static std::vector<std::string> problems(int rank, const RootSet& roots,
                                           const Character& chi);

 private:
  int rank_ = 1;
  RootSet roots_;
  Character chi_;
};

}  // namespace metaplectic
