#include "metaplectic/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "metaplectic/errors.hpp"

namespace metaplectic {

namespace {

void require_positive(const std::vector<int>& parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "partition must be nonempty");
  for (int p : parts) {
    if (p < 1) throw Error(ErrorCode::InvalidArgument, "partition parts must be >= 1");
  }
}

Root shifted(const Root& root, int offset) { return {root.i + offset, root.j + offset}; }

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  require_positive(parts_);
  if (!is_decreasing()) {
    throw Error(ErrorCode::InvalidArgument,
                "partition parts must be weakly decreasing: " + to_string(*this));
  }
  total_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition::Partition(std::vector<int> parts, Unchecked) : parts_(std::move(parts)) {
  require_positive(parts_);
  total_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::composition(std::vector<int> parts) {
  return Partition(std::move(parts), Unchecked{});
}

bool Partition::is_decreasing() const {
  return std::is_sorted(parts_.begin(), parts_.end(), std::greater<>());
}

std::string to_string(const Partition& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.parts().size(); ++i) os << (i ? "," : "") << p.parts()[i];
  os << ")";
  return os.str();
}

Partition parse_partition(const std::string& text, bool decreasing) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      parts.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad partition entry '" + item + "'");
    }
  }
  return decreasing ? Partition(std::move(parts)) : Partition::composition(std::move(parts));
}

std::vector<Partition> partitions_of(int r) {
  std::vector<Partition> out;
  if (r < 1) return out;
  std::vector<int> cur{r};
  while (true) {
    out.emplace_back(cur);
    // next partition in reverse lexicographic order
    int rem = 0;
    while (!cur.empty() && cur.back() == 1) {
      rem += 1;
      cur.pop_back();
    }
    if (cur.empty()) break;
    int k = --cur.back();
    rem += 1;
    while (rem > k) {
      cur.push_back(k);
      rem -= k;
    }
    if (rem > 0) cur.push_back(rem);
  }
  return out;
}

std::vector<Partition> compositions_of(int r) {
  std::vector<Partition> out;
  if (r < 1) return out;
  // bit k of mask set = cut after position k+1
  for (unsigned mask = 0; mask < (1u << (r - 1)); ++mask) {
    std::vector<int> parts;
    int run = 1;
    for (int k = 0; k < r - 1; ++k) {
      if (mask & (1u << k)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    out.push_back(Partition::composition(std::move(parts)));
  }
  return out;
}

std::string to_string(Dominance d) {
  switch (d) {
    case Dominance::Greater: return "greater";
    case Dominance::Less: return "less";
    case Dominance::Equal: return "equal";
    case Dominance::Incomparable: return "incomparable";
  }
  return "?";
}

Dominance dominance_compare(const Partition& p, const Partition& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::MismatchedSize,
                "partitions of different sizes: " + to_string(p) + " vs " + to_string(q));
  }
  bool p_ge = true;
  bool q_ge = true;
  int sp = 0;
  int sq = 0;
  std::size_t len = std::max(p.parts().size(), q.parts().size());
  for (std::size_t i = 0; i < len; ++i) {
    sp += i < p.parts().size() ? p.parts()[i] : 0;
    sq += i < q.parts().size() ? q.parts()[i] : 0;
    if (sp < sq) p_ge = false;
    if (sq < sp) q_ge = false;
  }
  if (p_ge && q_ge) return Dominance::Equal;
  if (p_ge) return Dominance::Greater;
  if (q_ge) return Dominance::Less;
  return Dominance::Incomparable;
}

Partition theta_orbit(int n, int r) {
  if (n < 2 || r < 1) {
    throw Error(ErrorCode::InvalidArgument, "theta_orbit needs n >= 2 and r >= 1");
  }
  std::vector<int> parts(static_cast<std::size_t>(r / n), n);
  if (r % n != 0) parts.push_back(r % n);
  return Partition(std::move(parts));
}

WeightVector orbit_weights(const Partition& orbit, WeightVariant variant) {
  auto block = [](int p) {
    WeightVector w;
    for (int e = p - 1; e >= 1 - p; e -= 2) w.push_back(e);
    return w;
  };
  WeightVector out;
  if (variant == WeightVariant::Standard) {
    for (int p : orbit.parts()) {
      auto b = block(p);
      out.insert(out.end(), b.begin(), b.end());
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  }
  out = block(orbit[0]);
  if (orbit.length() > 1) {
    std::vector<int> rest(orbit.parts().begin() + 1, orbit.parts().end());
    auto tail = orbit_weights(Partition(std::move(rest)), WeightVariant::Standard);
    out.insert(out.end(), tail.begin(), tail.end());
  }
  return out;
}

RootSet weighted_roots(const WeightVector& w, int l) {
  if (l < 0) throw Error(ErrorCode::InvalidArgument, "weighted_roots needs l >= 0");
  RootSet out;
  int r = static_cast<int>(w.size());
  for (int i = 1; i <= r; ++i) {
    for (int j = 1; j <= r; ++j) {
      if (i != j && w[i - 1] - w[j - 1] >= l) out.insert({i, j});
    }
  }
  return out;
}

Character semi_whittaker_character(const Partition& lambda) {
  Character chi;
  int start = 1;
  for (int p : lambda.parts()) {
    for (int i = start; i < start + p - 1; ++i) chi.set({i, i + 1}, {Tag::One, 0});
    start += p;
  }
  return chi;
}

std::vector<int> prime_to_standard_permutation(const Partition& orbit) {
  WeightVector prime = orbit_weights(orbit, WeightVariant::Prime);
  std::vector<int> order(prime.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return prime[a] > prime[b]; });
  std::vector<int> perm(prime.size());
  for (std::size_t t = 0; t < order.size(); ++t) perm[order[t]] = static_cast<int>(t) + 1;
  return perm;
}

namespace {

Partition tail_of(const Partition& orbit) {
  return Partition(std::vector<int>(orbit.parts().begin() + 1, orbit.parts().end()));
}

Character v2_character(const Partition& orbit) {
  Character chi;
  int p1 = orbit[0];
  for (int a = 1; a < p1; ++a) chi.set({a, a + 1}, {Tag::One, 0});
  if (orbit.length() > 1) {
    const Character tail = u2_character(tail_of(orbit));
    for (const auto& [root, coef] : tail.support()) {
      chi.set(shifted(root, p1), coef);
    }
  }
  return chi;
}

}  // namespace

Character u2_character(const Partition& orbit) {
  auto perm = prime_to_standard_permutation(orbit);
  Character out;
  const Character v2 = v2_character(orbit);
  for (const auto& [root, coef] : v2.support()) {
    out.set({perm[root.i - 1], perm[root.j - 1]}, coef);
  }
  return out;
}

UnipotentConfig orbit_config(const Partition& orbit, OrbitConfigVariant variant) {
  const int r = orbit.size();
  const int p1 = orbit[0];
  if (variant == OrbitConfigVariant::V2) {
    auto w = orbit_weights(orbit, WeightVariant::Prime);
    return UnipotentConfig(r, weighted_roots(w, 2), v2_character(orbit));
  }
  RootSet roots;
  for (int a = 1; a <= p1; ++a) {
    for (int b = a + 1; b <= p1; ++b) roots.insert({a, b});
  }
  for (int a = 1; a < p1; ++a) {
    for (int j = p1 + 1; j <= r; ++j) roots.insert({a, j});
  }
  Character chi;
  for (int a = 1; a < p1; ++a) chi.set({a, a + 1}, {Tag::One, 0});
  if (orbit.length() > 1) {
    Partition rest = tail_of(orbit);
    for (const Root& root : weighted_roots(orbit_weights(rest, WeightVariant::Standard), 2)) {
      roots.insert(shifted(root, p1));
    }
    const Character tail = u2_character(rest);
    for (const auto& [root, coef] : tail.support()) {
      chi.set(shifted(root, p1), coef);
    }
  }
  if (variant == OrbitConfigVariant::U_O_prime) {
    auto w = orbit_weights(orbit, WeightVariant::Prime);
    for (int a = 1; a < p1; ++a) {
      for (int j = p1 + 1; j <= r; ++j) {
        if (w[a - 1] - w[j - 1] == 1) roots.erase({a, j});
      }
    }
  }
  return UnipotentConfig(r, std::move(roots), std::move(chi));
}

}  // namespace metaplectic
