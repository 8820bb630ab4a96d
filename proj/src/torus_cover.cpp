#include "metaplectic/torus_cover.hpp"

#include <algorithm>

#include "metaplectic/errors.hpp"

namespace metaplectic {

namespace {

std::int64_t checked_pow(std::int64_t base, int e) {
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (out > enumeration_budget()) return enumeration_budget() + 1;
    out *= base;
  }
  return out;
}

}  // namespace

CoverGroup::CoverGroup(CocycleParams params) : params_(std::move(params)) {
  const int n = params_.n();
  const int r = params_.r;
  nn_ = n * n;
  order_ = checked_pow(n, 2 * r + 1);
  if (order_ > enumeration_budget()) {
    throw Error(ErrorCode::BudgetExceeded, "cover of order n^(2r+1) with n=" + std::to_string(n) +
                                               ", r=" + std::to_string(r) + " exceeds the budget");
  }
  torus_count_ = order_ / n;

  table_.resize(static_cast<std::size_t>(nn_) * nn_);
  for (int k = 0; k < nn_; ++k) {
    for (int k2 = 0; k2 < nn_; ++k2) {
      table_[k * nn_ + k2] =
          hilbert_classes(params_.model, {k % n, k / n}, {k2 % n, k2 / n});
    }
  }

  digits_.resize(static_cast<std::size_t>(torus_count_) * (r + 1));
  for (std::int64_t t = 0; t < torus_count_; ++t) {
    std::uint16_t* d = &digits_[t * (r + 1)];
    std::int64_t rest = t;
    int dv = 0;
    int du = 0;
    for (int i = 0; i < r; ++i) {
      d[i] = static_cast<std::uint16_t>(rest % nn_);
      rest /= nn_;
      dv += d[i] % n;
      du += d[i] / n;
    }
    d[r] = static_cast<std::uint16_t>(dv % n + n * (du % n));
  }
}

CoverGroup build_cover(const CocycleParams& p) { return CoverGroup(p); }

std::pair<int, int> CoverGroup::entry(std::int64_t t, int i) const {
  int k = digits(t)[i];
  return {k % n(), k / n()};
}

std::vector<std::pair<int, int>> CoverGroup::classes(std::int64_t t) const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < rank(); ++i) out.push_back(entry(t, i));
  return out;
}

std::int64_t CoverGroup::torus_index(const std::vector<std::pair<int, int>>& cls) const {
  if (static_cast<int>(cls.size()) != rank()) {
    throw Error(ErrorCode::RankMismatch, "class vector of the wrong rank");
  }
  std::int64_t t = 0;
  for (int i = rank() - 1; i >= 0; --i) {
    t = t * nn_ + mod(cls[i].first, n()) + n() * mod(cls[i].second, n());
  }
  return t;
}

std::int64_t CoverGroup::encode(const TorusElement& t, int zeta) const {
  std::vector<std::pair<int, int>> cls;
  for (const auto& x : t) cls.push_back(class_of(params_.model, x));
  return element(torus_index(cls), mod(zeta, n()));
}

int CoverGroup::sigma(std::int64_t t, std::int64_t t2) const {
  const int r = rank();
  const std::uint16_t* a = digits(t);
  const std::uint16_t* b = digits(t2);
  int s = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) s += h(a[i], b[j]);
  }
  s += params_.c * h(a[r], b[r]);
  return s % n();
}

int CoverGroup::pairing(std::int64_t t, std::int64_t t2) const {
  return mod(sigma(t, t2) - sigma(t2, t), n());
}

std::int64_t CoverGroup::torus_mult(std::int64_t t, std::int64_t t2) const {
  const int n_ = n();
  const std::uint16_t* a = digits(t);
  const std::uint16_t* b = digits(t2);
  std::int64_t out = 0;
  for (int i = rank() - 1; i >= 0; --i) {
    int v = (a[i] % n_ + b[i] % n_) % n_;
    int u = (a[i] / n_ + b[i] / n_) % n_;
    out = out * nn_ + v + n_ * u;
  }
  return out;
}

std::int64_t CoverGroup::torus_inverse(std::int64_t t) const {
  const int n_ = n();
  const std::uint16_t* a = digits(t);
  std::int64_t out = 0;
  for (int i = rank() - 1; i >= 0; --i) {
    out = out * nn_ + (n_ - a[i] % n_) % n_ + n_ * ((n_ - a[i] / n_) % n_);
  }
  return out;
}

std::int64_t CoverGroup::mult(std::int64_t a, std::int64_t b) const {
  const std::int64_t t = torus_of(a);
  const std::int64_t t2 = torus_of(b);
  return element(torus_mult(t, t2), (zeta_of(a) + zeta_of(b) + sigma(t, t2)) % n());
}

std::int64_t CoverGroup::inverse(std::int64_t a) const {
  const std::int64_t t = torus_of(a);
  const std::int64_t ti = torus_inverse(t);
  return element(ti, mod(-zeta_of(a) - sigma(t, ti), n()));
}

bool CoverGroup::commute(std::int64_t a, std::int64_t b) const {
  return pairing(torus_of(a), torus_of(b)) == 0;
}

// Incremental closure under right multiplication by a growing generator list.
struct Closure {
  const CoverGroup& g;
  const std::vector<bool>* allowed;
  Subgroup s;

  Closure(const CoverGroup& group, const std::vector<bool>* allowed_, std::string name)
      : g(group), allowed(allowed_) {
    s.name_ = std::move(name);
    s.members_.assign(g.order(), false);
    add(g.identity());
  }

  bool has(std::int64_t x) const { return s.members_[x]; }

  void add(std::int64_t x) {
    if (allowed && !(*allowed)[x]) {
      throw Error(ErrorCode::NotASubgroup,
                  "member set of '" + s.name_ + "' is not closed under multiplication");
    }
    s.members_[x] = true;
    s.elements_.push_back(x);
  }

  void adjoin(std::int64_t gen) {
    if (has(gen)) return;
    s.generators_.push_back(gen);
    const std::size_t old = s.elements_.size();
    for (std::size_t i = 0; i < old; ++i) {
      std::int64_t y = g.mult(s.elements_[i], gen);
      if (!has(y)) add(y);
    }
    for (std::size_t i = old; i < s.elements_.size(); ++i) {
      for (std::int64_t q : s.generators_) {
        std::int64_t y = g.mult(s.elements_[i], q);
        if (!has(y)) add(y);
      }
    }
  }

  Subgroup finish() {
    std::sort(s.elements_.begin(), s.elements_.end());
    return std::move(s);
  }
};

Subgroup Subgroup::from_members(const CoverGroup& g, std::vector<bool> members, std::string name) {
  if (static_cast<std::int64_t>(members.size()) != g.order()) {
    throw Error(ErrorCode::InvalidArgument, "member vector does not match the group order");
  }
  Closure c(g, &members, std::move(name));
  // mu_n first keeps generator lists short for the usual subgroups
  if (g.n() > 1 && members[1]) c.adjoin(1);
  for (std::int64_t x = 0; x < g.order(); ++x) {
    if (members[x] && !c.has(x)) c.adjoin(x);
  }
  return c.finish();
}

Subgroup Subgroup::generated(const CoverGroup& g, const std::vector<std::int64_t>& gens,
                             std::string name) {
  Closure c(g, nullptr, std::move(name));
  for (std::int64_t x : gens) {
    if (x < 0 || x >= g.order()) throw Error(ErrorCode::InvalidArgument, "element out of range");
    c.adjoin(x);
  }
  return c.finish();
}

Subgroup Subgroup::from_torus_predicate(const CoverGroup& g,
                                        const std::function<bool(std::int64_t)>& pred,
                                        std::string name) {
  std::vector<bool> members(g.order(), false);
  for (std::int64_t t = 0; t < g.torus_count(); ++t) {
    if (!pred(t)) continue;
    for (int z = 0; z < g.n(); ++z) members[g.element(t, z)] = true;
  }
  return from_members(g, std::move(members), std::move(name));
}

namespace {

struct Blocks {
  std::vector<int> start;
  std::vector<int> size;
};

Blocks blocks_of(const CoverGroup& g, const std::optional<Partition>& levi,
                 const std::string& name) {
  if (!levi) {
    throw Error(ErrorCode::InvalidArgument, "subgroup '" + name + "' needs a Levi composition");
  }
  if (levi->size() != g.rank()) {
    throw Error(ErrorCode::RankMismatch, "Levi composition " + to_string(*levi) +
                                             " does not sum to r = " + std::to_string(g.rank()));
  }
  Blocks b;
  int s = 0;
  for (int p : levi->parts()) {
    b.start.push_back(s);
    b.size.push_back(p);
    s += p;
  }
  return b;
}

bool killed_by(int e, std::pair<int, int> cls, int n) {
  return mod(static_cast<long long>(e) * cls.first, n) == 0 &&
         mod(static_cast<long long>(e) * cls.second, n) == 0;
}

bool block_scalar(const CoverGroup& g, std::int64_t t, int start, int size) {
  auto first = g.entry(t, start);
  for (int i = start + 1; i < start + size; ++i) {
    if (g.entry(t, i) != first) return false;
  }
  return true;
}

bool det_square(const CoverGroup& g, std::int64_t t, int start, int size) {
  int v = 0;
  int u = 0;
  for (int i = start; i < start + size; ++i) {
    auto [a, b] = g.entry(t, i);
    v += a;
    u += b;
  }
  return v % g.n() == 0 && u % g.n() == 0;
}

bool integral(const CoverGroup& g, std::int64_t t) {
  for (int i = 0; i < g.rank(); ++i) {
    if (g.entry(t, i).first != 0) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> subgroup_names() {
  return {"full", "mu",  "Z",   "Zn",   "T_o",    "sq",     "sq_o",
          "std",  "zn_sq_o", "Z_M", "Zn_M", "sq_M", "sq_M_o", "zn_M_sq_M_o"};
}

Subgroup named_subgroup(const CoverGroup& g, const std::string& name,
                        const std::optional<Partition>& levi) {
  const int n = g.n();
  const int r = g.rank();
  const int c = g.params().c;
  auto pred = [&](auto f) { return Subgroup::from_torus_predicate(g, f, name); };

  if (name == "full") return pred([](std::int64_t) { return true; });
  if (name == "mu") return pred([](std::int64_t t) { return t == 0; });
  if (name == "Z" || name == "Z_M") {
    if (name == "Z_M") blocks_of(g, levi, name);
    // a I with a^{2rc+r-1} an n-th power; blockwise equal classes collapse to this
    const int e = 2 * r * c + r - 1;
    return pred([&](std::int64_t t) {
      return block_scalar(g, t, 0, r) && killed_by(e, g.entry(t, 0), n);
    });
  }
  if (name == "Zn") {
    return pred([&](std::int64_t t) {
      return block_scalar(g, t, 0, r) && killed_by(r, g.entry(t, 0), n);
    });
  }
  if (name == "T_o") return pred([&](std::int64_t t) { return integral(g, t); });
  if (name == "sq") return pred([&](std::int64_t t) { return det_square(g, t, 0, r); });
  if (name == "sq_o") {
    return pred([&](std::int64_t t) { return integral(g, t) && det_square(g, t, 0, r); });
  }
  if (name == "std") {
    auto s = product(g, named_subgroup(g, "Z"), named_subgroup(g, "T_o"));
    s.rename(name);
    return s;
  }
  if (name == "zn_sq_o") {
    auto s = product(g, named_subgroup(g, "Zn"), named_subgroup(g, "sq_o"));
    s.rename(name);
    return s;
  }
  if (name == "Zn_M") {
    Blocks b = blocks_of(g, levi, name);
    return pred([&](std::int64_t t) {
      for (std::size_t i = 0; i < b.start.size(); ++i) {
        if (!block_scalar(g, t, b.start[i], b.size[i])) return false;
        if (!killed_by(b.size[i], g.entry(t, b.start[i]), n)) return false;
      }
      return true;
    });
  }
  if (name == "sq_M" || name == "sq_M_o") {
    Blocks b = blocks_of(g, levi, name);
    const bool o = name == "sq_M_o";
    return pred([&, o](std::int64_t t) {
      if (o && !integral(g, t)) return false;
      for (std::size_t i = 0; i < b.start.size(); ++i) {
        if (!det_square(g, t, b.start[i], b.size[i])) return false;
      }
      return true;
    });
  }
  if (name == "zn_M_sq_M_o") {
    auto s = product(g, named_subgroup(g, "Zn_M", levi), named_subgroup(g, "sq_M_o", levi));
    s.rename(name);
    return s;
  }
  throw Error(ErrorCode::UnknownName, "unknown subgroup name '" + name + "'");
}

namespace {

std::vector<std::int64_t> torus_classes_of(const CoverGroup& g, const Subgroup& s) {
  std::vector<std::int64_t> out;
  for (std::int64_t x : s.elements()) {
    std::int64_t t = g.torus_of(x);
    if (out.empty() || out.back() != t) out.push_back(t);
  }
  return out;
}

bool commutes_with_all(const CoverGroup& g, std::int64_t x, const std::vector<std::int64_t>& gens) {
  for (std::int64_t y : gens) {
    if (!g.commute(x, y)) return false;
  }
  return true;
}

}  // namespace

Subgroup center_bruteforce(const CoverGroup& g, const Subgroup& ambient) {
  // mu_n is central, so commuting is decided by torus classes alone
  auto classes = torus_classes_of(g, ambient);
  std::vector<bool> central_class(g.torus_count(), false);
  for (std::int64_t t : classes) {
    bool central = true;
    for (std::int64_t t2 : classes) {
      if (g.pairing(t, t2) != 0) {
        central = false;
        break;
      }
    }
    central_class[t] = central;
  }
  std::vector<bool> members(g.order(), false);
  for (std::int64_t x : ambient.elements()) {
    if (central_class[g.torus_of(x)]) members[x] = true;
  }
  return Subgroup::from_members(g, std::move(members), "center");
}

Subgroup center_bruteforce(const CoverGroup& g) {
  return center_bruteforce(g, named_subgroup(g, "full"));
}

bool is_abelian(const CoverGroup& g, const Subgroup& s) {
  const auto& gens = s.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!g.commute(gens[i], gens[j])) return false;
    }
  }
  return true;
}

bool is_contained(const Subgroup& b, const Subgroup& a) {
  for (std::int64_t x : b.elements()) {
    if (!a.contains(x)) return false;
  }
  return true;
}

bool is_maximal_abelian(const CoverGroup& g, const Subgroup& s, const Subgroup& ambient) {
  if (!is_contained(s, ambient)) {
    throw Error(ErrorCode::NotASubgroup,
                "'" + s.name() + "' is not a subgroup of '" + ambient.name() + "'");
  }
  if (!is_abelian(g, s)) return false;
  // commuting depends only on the torus class; elements are sorted by it
  std::int64_t seen = -1;
  bool seen_commutes = false;
  for (std::int64_t x : ambient.elements()) {
    const std::int64_t t = g.torus_of(x);
    if (t != seen) {
      seen = t;
      seen_commutes = commutes_with_all(g, x, s.generators());
    }
    if (seen_commutes && !s.contains(x)) return false;
  }
  return true;
}

Subgroup extend_to_maximal_abelian(const CoverGroup& g, const Subgroup& s,
                                   const Subgroup& ambient) {
  if (!is_contained(s, ambient)) {
    throw Error(ErrorCode::NotASubgroup,
                "'" + s.name() + "' is not a subgroup of '" + ambient.name() + "'");
  }
  if (!is_abelian(g, s)) {
    throw Error(ErrorCode::InvalidArgument, "'" + s.name() + "' is not abelian");
  }
  Closure c(g, nullptr, s.name() + "_max");
  for (std::int64_t x : s.generators()) c.adjoin(x);
  std::int64_t rejected = -1;
  for (std::int64_t x : ambient.elements()) {
    if (c.has(x) || g.torus_of(x) == rejected) continue;
    if (commutes_with_all(g, x, c.s.generators())) {
      c.adjoin(x);
    } else {
      rejected = g.torus_of(x);
    }
  }
  return c.finish();
}

std::int64_t index(const Subgroup& a, const Subgroup& b) {
  if (!is_contained(b, a)) {
    throw Error(ErrorCode::NotContained,
                "'" + b.name() + "' is not contained in '" + a.name() + "'");
  }
  return a.order() / b.order();
}

Subgroup intersection(const CoverGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<bool> members(g.order(), false);
  for (std::int64_t x : a.elements()) {
    if (b.contains(x)) members[x] = true;
  }
  return Subgroup::from_members(g, std::move(members), a.name() + "&" + b.name());
}

Subgroup product(const CoverGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<std::int64_t> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Subgroup::generated(g, gens, a.name() + "*" + b.name());
}

}  // namespace metaplectic
