#include "metaplectic/cocycle.hpp"

#include <random>
#include <string>

#include "metaplectic/errors.hpp"

namespace metaplectic {

namespace {

void require_rank(const CocycleParams& p, const TorusElement& t) {
  if (static_cast<int>(t.size()) != p.r) {
    throw Error(ErrorCode::RankMismatch, "torus element of rank " + std::to_string(t.size()) +
                                             " for cocycle of rank " + std::to_string(p.r));
  }
}

TorusElement multiply(const TorusElement& a, const TorusElement& b) {
  TorusElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (out > (std::int64_t{1} << 62) / base) return std::int64_t{1} << 62;
    out *= base;
  }
  return out;
}

TorusElement slice(const TorusElement& t, int start, int len) {
  return TorusElement(t.begin() + start, t.begin() + start + len);
}

}  // namespace

CocycleParams::CocycleParams(FieldModel m, int c_, int r_) : model(m), c(c_), r(r_) {
  if (c < 0 || c >= model.n()) throw Error(ErrorCode::InvalidArgument, "c must satisfy 0 <= c < n");
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "rank must be >= 1");
}

int sigma_torus(const CocycleParams& p, const TorusElement& t, const TorusElement& t2) {
  require_rank(p, t);
  require_rank(p, t2);
  long long upper = 0;
  long long all = 0;
  for (int i = 0; i < p.r; ++i) {
    for (int j = 0; j < p.r; ++j) {
      int h = hilbert(p.model, t[i], t2[j]);
      all += h;
      if (i < j) upper += h;
    }
  }
  return mod(upper + p.c * all, p.n());
}

int commutator_pairing(const CocycleParams& p, const TorusElement& t, const TorusElement& t2) {
  return mod(sigma_torus(p, t, t2) - sigma_torus(p, t2, t), p.n());
}

TorusElement scalar(int r, const FieldElement& a) { return TorusElement(r, a); }

FieldElement determinant(const TorusElement& t) {
  FieldElement d;
  for (const auto& x : t) d = d * x;
  return d;
}

std::vector<TorusElement> torus_class_representatives(const CocycleParams& p) {
  const int n = p.n();
  const std::int64_t count = ipow(n, 2 * p.r);
  if (count > enumeration_budget()) {
    throw Error(ErrorCode::BudgetExceeded, "too many torus classes: " + std::to_string(count));
  }
  std::vector<TorusElement> out;
  out.reserve(count);
  for (std::int64_t idx = 0; idx < count; ++idx) {
    TorusElement t(p.r);
    std::int64_t rest = idx;
    for (int i = 0; i < p.r; ++i) {
      t[i].v = rest % n;
      rest /= n;
      t[i].u = rest % n;
      rest /= n;
    }
    out.push_back(std::move(t));
  }
  return out;
}

CocycleReport check_cocycle_identity(const CocycleParams& p, CheckMode mode) {
  auto reps = torus_class_representatives(p);
  CocycleReport report;
  auto check = [&](const TorusElement& g, const TorusElement& h, const TorusElement& k) {
    int lhs = mod(sigma_torus(p, g, h) + sigma_torus(p, multiply(g, h), k), p.n());
    int rhs = mod(sigma_torus(p, g, multiply(h, k)) + sigma_torus(p, h, k), p.n());
    ++report.checked;
    if (lhs != rhs) report.violations.push_back({{g, h, k}, lhs, rhs});
  };
  if (mode.exhaustive) {
    const std::int64_t total = ipow(static_cast<std::int64_t>(reps.size()), 3);
    if (total > enumeration_budget()) {
      throw Error(ErrorCode::BudgetExceeded,
                  "exhaustive cocycle check needs " + std::to_string(total) + " triples");
    }
    for (const auto& g : reps) {
      for (const auto& h : reps) {
        for (const auto& k : reps) check(g, h, k);
      }
    }
    return report;
  }
  std::mt19937_64 rng(mode.seed);
  std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
  for (std::int64_t s = 0; s < mode.samples; ++s) {
    const auto& g = reps[pick(rng)];
    const auto& h = reps[pick(rng)];
    const auto& k = reps[pick(rng)];
    check(g, h, k);
  }
  return report;
}

bool check_block_compatibility(const CocycleParams& p, const Partition& lambda,
                               const TorusElement& t, const TorusElement& t2) {
  require_rank(p, t);
  require_rank(p, t2);
  if (lambda.size() != p.r) {
    throw Error(ErrorCode::RankMismatch, "Levi partition does not sum to the rank");
  }
  const int k = lambda.length();
  std::vector<int> start(k, 0);
  for (int i = 1; i < k; ++i) start[i] = start[i - 1] + lambda[i - 1];

  long long rhs = 0;
  std::vector<FieldElement> det(k), det2(k);
  for (int i = 0; i < k; ++i) {
    CocycleParams block(p.model, p.c, lambda[i]);
    auto g = slice(t, start[i], lambda[i]);
    auto g2 = slice(t2, start[i], lambda[i]);
    rhs += sigma_torus(block, g, g2);
    det[i] = determinant(g);
    det2[i] = determinant(g2);
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      rhs += static_cast<long long>(p.c + 1) * hilbert(p.model, det[i], det2[j]);
      rhs += static_cast<long long>(p.c) * hilbert(p.model, det[j], det2[i]);
    }
  }
  return sigma_torus(p, t, t2) == mod(rhs, p.n());
}

BlockCompatReport check_block_compatibility_exhaustive(const CocycleParams& p,
                                                       const Partition& lambda) {
  auto reps = torus_class_representatives(p);
  const std::int64_t total = ipow(static_cast<std::int64_t>(reps.size()), 2);
  if (total > enumeration_budget()) {
    throw Error(ErrorCode::BudgetExceeded,
                "exhaustive block check needs " + std::to_string(total) + " pairs");
  }
  BlockCompatReport report;
  for (const auto& t : reps) {
    for (const auto& t2 : reps) {
      ++report.checked;
      if (check_block_compatibility(p, lambda, t, t2)) continue;
      if (++report.violation_count <= 16) report.violations.emplace_back(t, t2);
    }
  }
  return report;
}

}  // namespace metaplectic
