#pragma once

#include <utility>
#include <cstdint>
#include <vector>

namespace metaplectic {

/// A non-Archimedean local field at a tame place, kept only to the precision the
/// n-th Hilbert symbol needs: the degree n, the residue field size q, and the
/// convention that mu_n is written additively as Z/n exponents of
/// zeta = omega^((q-1)/n) for a fixed generator omega of the residue units.
class FieldModel {
 public:
  /// Requires n >= 2, q an odd prime power with q = 1 mod n.
  FieldModel(int n, long long q);

  int n() const { return n_; }
  long long q() const { return q_; }
  /// Exponent of zeta representing -1, namely (q-1)/2 mod n.
  int minus_one_exponent() const { return minus_one_; }

 private:
  int n_;
  long long q_;
  int minus_one_;
};

/// pi^v * omega^u. The unit exponent u lives in Z/(q-1); only u mod n matters
/// for anything computed here.
struct FieldElement {
  long long v = 0;
  long long u = 0;

  FieldElement operator*(const FieldElement& o) const { return {v + o.v, u + o.u}; }
  FieldElement inverse() const { return {-v, -u}; }
  FieldElement pow(long long k) const { return {v * k, u * k}; }
  bool operator==(const FieldElement&) const = default;
};

/// -1 = omega^((q-1)/2).
FieldElement minus_one(const FieldModel& m);

/// Class in F^x / F^{x n}: (v mod n, u mod n), both reduced into [0, n).
std::pair<int, int> class_of(const FieldModel& m, const FieldElement& x);

/// Tame n-th Hilbert symbol as an exponent of zeta:
///   (pi^a w^b, pi^c w^d) = [(-1)^{ac} x^c y^{-a}]^{(q-1)/n}
/// reduced to the residue field, which is zeta^{ac(q-1)/2 + bc - ad}.
int hilbert(const FieldModel& m, const FieldElement& x, const FieldElement& y);

/// Same symbol on class pairs (v, u) with 0 <= v, u < n.
int hilbert_classes(const FieldModel& m, std::pair<int, int> x, std::pair<int, int> y);

int mod(long long a, long long n);
bool is_prime_power(long long q);
struct HilbertAxiomReport {
  std::int64_t checked = 0;
  std::int64_t bilinearity = 0;
  std::int64_t antisymmetry = 0;
  std::int64_t x_minus_x = 0;
  std::int64_t degenerate = 0;
  std::int64_t violations() const { return bilinearity + antisymmetry + x_minus_x + degenerate; }
};

/// Bilinearity, (x,y)(y,x) = 1, (x,-x) = 1 and nondegeneracy, over all class pairs.
HilbertAxiomReport check_hilbert_axioms(const FieldModel& m);

/// The first `count` primes q with q = 1 mod n.
std::vector<long long> tame_primes(int n, int count);

}  // namespace metaplectic
