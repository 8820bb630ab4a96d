#pragma once

#include <string>
#include <vector>

#include "metaplectic/roots.hpp"

namespace metaplectic {

/// Weakly decreasing tuple of positive integers. Also used, via `composition`,
/// for ordered Levi block sizes where the decreasing requirement is dropped.
class Partition {
 public:
  explicit Partition(std::vector<int> parts);

  /// Positive parts in caller order; no ordering requirement.
  static Partition composition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return total_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int operator[](std::size_t i) const { return parts_[i]; }
  bool is_decreasing() const;

  bool operator==(const Partition&) const = default;

 private:
  struct Unchecked {};
  Partition(std::vector<int> parts, Unchecked);

  std::vector<int> parts_;
  int total_ = 0;
};

std::string to_string(const Partition& p);
/// Parses "3,3,1". Sorting is not applied; `decreasing` enforces partition order.
Partition parse_partition(const std::string& text, bool decreasing = true);

/// All partitions of r, in reverse lexicographic order starting from (r).
std::vector<Partition> partitions_of(int r);
/// All ordered compositions of r into positive parts.
std::vector<Partition> compositions_of(int r);

enum class Dominance { Greater, Less, Equal, Incomparable };
std::string to_string(Dominance d);

Dominance dominance_compare(const Partition& p, const Partition& q);

/// (n^a b) with r = a n + b, 0 <= b < n; the b part is dropped when zero.
Partition theta_orbit(int n, int r);

using WeightVector = std::vector<int>;

enum class WeightVariant { Standard, Prime };

/// Standard: all block weights p-1, p-3, ..., 1-p sorted decreasingly.
/// Prime: the first block laid out in order, followed by the Standard vector
/// of the remaining parts.
WeightVector orbit_weights(const Partition& orbit, WeightVariant variant);

/// {(i,j) : i != j, w[i] - w[j] >= l}.
RootSet weighted_roots(const WeightVector& w, int l);

/// One on (i,i+1) for i inside a block of the composition, Zero elsewhere.
Character semi_whittaker_character(const Partition& lambda);

/// Stable permutation `perm` (1-based, perm[k-1] = image of k) carrying the
/// Prime layout onto the Standard layout: h[perm(k)] = h'[k].
std::vector<int> prime_to_standard_permutation(const Partition& orbit);

enum class OrbitConfigVariant { V2, U_O, U_O_prime };

/// The orbit-attached unipotent configurations. V2 uses the Prime torus; the
/// character is Whittaker on the first block and, recursively, the Weyl
/// transport of the V2 character of the remaining parts. Throws NotClosed for
/// U_O_prime when removing the weight-one roots leaves a non-closed set.
UnipotentConfig orbit_config(const Partition& orbit, OrbitConfigVariant variant);

/// The recursive general-position representative on U_2(O) for the Standard
/// torus (positions 1..|O|).
Character u2_character(const Partition& orbit);

}  // namespace metaplectic
