#include "metaplectic/jacquet.hpp"

#include <map>
#include <numeric>

#include "metaplectic/errors.hpp"
#include "metaplectic/torus_cover.hpp"

namespace metaplectic {

std::string to_string(DimKind k) {
  switch (k) {
    case DimKind::Zero: return "zero";
    case DimKind::Exact: return "exact";
    case DimKind::FiniteUnknown: return "finite_unknown";
  }
  return "?";
}

DimValue whittaker_dim_block(int n, int r_i, int c) {
  if (n < 2 || r_i < 1) throw Error(ErrorCode::InvalidArgument, "need n >= 2 and r_i >= 1");
  if (n <= r_i - 1) return DimValue::zero();
  if (n == r_i) return DimValue::exact(1);
  if (n == r_i + 1 && mod(2LL * (c + 1), n) == 0) return DimValue::exact(1);
  return DimValue::unknown("d(" + std::to_string(r_i) + ")");
}

bool vanishes(int n, const Partition& lambda) {
  for (int p : lambda.parts()) {
    if (p > n) return true;
  }
  return false;
}

WssCertificate wss_check(int n, int r) {
  if (n < 2 || r < 1) throw Error(ErrorCode::InvalidArgument, "need n >= 2 and r >= 1");
  WssCertificate cert;
  cert.orbit = theta_orbit(n, r);
  cert.holds = r % n == 0;
  if (cert.holds) {
    cert.a = n;
    cert.b = r / n;
  }
  return cert;
}

namespace {

struct IndexPair {
  std::int64_t standard;
  std::int64_t first;
};

// [std : T_o] and, optionally, [T_* : T_* & sq] for a single GL(r) block.
IndexPair block_indices(const FieldModel& model, int c, int r, bool first_formula) {
  CoverGroup g(CocycleParams(model, c, r));
  auto t_o = named_subgroup(g, "T_o");
  auto st = named_subgroup(g, "std");
  IndexPair out{index(st, t_o), 0};
  if (first_formula) {
    auto full = named_subgroup(g, "full");
    auto t_star = extend_to_maximal_abelian(g, named_subgroup(g, "zn_sq_o"), full);
    auto t_star_sq = intersection(g, t_star, named_subgroup(g, "sq"));
    out.first = index(t_star, t_star_sq);
  }
  return out;
}

}  // namespace

SemiWhittakerResult semi_whittaker_dim(int n, long long q, int c, const Partition& lambda,
                                       bool first_formula) {
  FieldModel model(n, q);
  if (c < 0 || c >= n) throw Error(ErrorCode::InvalidArgument, "c must satisfy 0 <= c < n");
  SemiWhittakerResult res;

  bool unknown = false;
  std::string unknown_desc;
  for (std::size_t i = 0; i < lambda.parts().size(); ++i) {
    DimValue d = whittaker_dim_block(n, lambda[i], c);
    if (d.kind == DimKind::FiniteUnknown) {
      unknown = true;
      res.dim.unknown_blocks.push_back(static_cast<int>(i));
      unknown_desc += (unknown_desc.empty() ? "" : " * ") + d.description;
    }
    res.d_blocks.push_back(d);
  }
  for (const auto& d : res.d_blocks) {
    if (d.kind == DimKind::Zero) {
      res.dim = DimValue::zero();
      return res;
    }
  }

  std::map<int, IndexPair> per_rank;
  for (int r_i : lambda.parts()) {
    if (!per_rank.count(r_i)) per_rank.emplace(r_i, block_indices(model, c, r_i, first_formula));
  }
  std::int64_t num = 1;
  std::int64_t first_num = 1;
  if (first_formula) res.first_numerators.emplace();
  for (int r_i : lambda.parts()) {
    res.numerators.push_back(per_rank.at(r_i).standard);
    num *= per_rank.at(r_i).standard;
    if (first_formula) {
      res.first_numerators->push_back(per_rank.at(r_i).first);
      first_num *= per_rank.at(r_i).first;
    }
  }

  CoverGroup g(CocycleParams(model, c, lambda.size()));
  res.denominator = index(named_subgroup(g, "std"), named_subgroup(g, "T_o"));
  if (first_formula) {
    auto full = named_subgroup(g, "full");
    auto t_star = extend_to_maximal_abelian(g, named_subgroup(g, "zn_M_sq_M_o", lambda), full);
    auto t_star_sq = intersection(g, t_star, named_subgroup(g, "sq_M", lambda));
    res.first_denominator = index(t_star, t_star_sq);
  }

  if (unknown) {
    const std::int64_t g = std::gcd(num, res.denominator);
    std::string coef = std::to_string(num / g);
    if (res.denominator / g != 1) coef += "/" + std::to_string(res.denominator / g);
    auto blocks = res.dim.unknown_blocks;
    res.dim = DimValue::unknown(coef + " * " + unknown_desc);
    res.dim.unknown_blocks = std::move(blocks);
  } else if (num % res.denominator != 0) {
    throw Error(ErrorCode::InvalidArgument, "index ratio " + std::to_string(num) + "/" +
                                                std::to_string(res.denominator) +
                                                " is not an integer");
  } else {
    res.dim = DimValue::exact(num / res.denominator);
  }
  return res;
}

}  // namespace metaplectic
