#include "metaplectic/local_field.hpp"

#include <string>

#include "metaplectic/errors.hpp"

namespace metaplectic {

int mod(long long a, long long n) {
  long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

bool is_prime_power(long long q) {
  if (q < 2) return false;
  long long p = 0;
  for (long long d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return true;
  while (q % p == 0) q /= p;
  return q == 1;
}

std::vector<long long> tame_primes(int n, int count) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  std::vector<long long> out;
  for (long long q = n + 1; static_cast<int>(out.size()) < count; q += n) {
    bool prime = q > 2 && q % 2 == 1;
    for (long long d = 3; prime && d * d <= q; d += 2) {
      if (q % d == 0) prime = false;
    }
    if (prime) out.push_back(q);
  }
  return out;
}

FieldModel::FieldModel(int n, long long q) : n_(n), q_(q) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  if (!is_prime_power(q) || q % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "q must be an odd prime power, got " + std::to_string(q));
  }
  if ((q - 1) % n != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "q = " + std::to_string(q) + " is not 1 mod n = " + std::to_string(n));
  }
  minus_one_ = mod((q - 1) / 2, n);
}

FieldElement minus_one(const FieldModel& m) { return {0, (m.q() - 1) / 2}; }

std::pair<int, int> class_of(const FieldModel& m, const FieldElement& x) {
  return {mod(x.v, m.n()), mod(x.u, m.n())};
}

int hilbert_classes(const FieldModel& m, std::pair<int, int> x, std::pair<int, int> y) {
  const long long a = x.first, b = x.second, c = y.first, d = y.second;
  return mod(a * c * m.minus_one_exponent() + b * c - a * d, m.n());
}

int hilbert(const FieldModel& m, const FieldElement& x, const FieldElement& y) {
  return hilbert_classes(m, class_of(m, x), class_of(m, y));
}

HilbertAxiomReport check_hilbert_axioms(const FieldModel& m) {
  const int n = m.n();
  std::vector<FieldElement> cls;
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) cls.push_back({v, u});
  }
  HilbertAxiomReport rep;
  for (const auto& x : cls) {
    bool pairs_nontrivially = false;
    ++rep.checked;
    if (hilbert(m, x, x * minus_one(m)) != 0) ++rep.x_minus_x;
    for (const auto& y : cls) {
      const int h = hilbert(m, x, y);
      if (h != 0) pairs_nontrivially = true;
      if (mod(h + hilbert(m, y, x), n) != 0) ++rep.antisymmetry;
      for (const auto& z : cls) {
        ++rep.checked;
        if (hilbert(m, x * y, z) != mod(hilbert(m, x, z) + hilbert(m, y, z), n)) ++rep.bilinearity;
        if (hilbert(m, x, y * z) != mod(hilbert(m, x, y) + hilbert(m, x, z), n)) ++rep.bilinearity;
      }
    }
    if (class_of(m, x) != std::pair<int, int>{0, 0} && !pairs_nontrivially) ++rep.degenerate;
  }
  return rep;
}

}  // namespace metaplectic
