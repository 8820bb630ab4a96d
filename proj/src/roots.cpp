#include "metaplectic/roots.hpp"

#include "metaplectic/errors.hpp"

namespace metaplectic {

std::optional<Root> compose(const Root& a, const Root& b) {
  if (a.j == b.i && a.i != b.j) return Root{a.i, b.j};
  return std::nullopt;
}

std::optional<Root> root_sum(const Root& a, const Root& b) {
  if (auto s = compose(a, b)) return s;
  return compose(b, a);
}

bool is_closed(const RootSet& roots) {
  for (const Root& a : roots) {
    for (const Root& b : roots) {
      if (auto s = compose(a, b); s && !roots.count(*s)) return false;
    }
  }
  return true;
}

RootSet closure(const RootSet& roots) {
  RootSet out = roots;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Root> fresh;
    for (const Root& a : out) {
      for (const Root& b : out) {
        if (auto s = compose(a, b); s && !out.count(*s)) fresh.push_back(*s);
      }
    }
    for (const Root& f : fresh) grew |= out.insert(f).second;
  }
  return out;
}

bool is_abelian(const RootSet& roots) {
  for (const Root& a : roots) {
    for (const Root& b : roots) {
      if (compose(a, b)) return false;
    }
  }
  return true;
}

RootSet positive_roots(int r) {
  RootSet out;
  for (int i = 1; i <= r; ++i) {
    for (int j = i + 1; j <= r; ++j) out.insert({i, j});
  }
  return out;
}

std::string to_string(const Root& root) {
  return "(" + std::to_string(root.i) + "," + std::to_string(root.j) + ")";
}

Coef Character::at(const Root& root) const {
  auto it = support_.find(root);
  return it == support_.end() ? Coef{} : it->second;
}

void Character::set(const Root& root, Coef coef) {
  if (coef.tag == Tag::Zero) {
    support_.erase(root);
  } else {
    support_[root] = coef;
  }
}

std::vector<std::string> UnipotentConfig::problems(int rank, const RootSet& roots,
                                                   const Character& chi) {
  std::vector<std::string> out;
  if (rank < 1) out.push_back("rank must be positive");
  for (const Root& a : roots) {
    if (a.i < 1 || a.j < 1 || a.i > rank || a.j > rank || a.i == a.j) {
      out.push_back("root " + to_string(a) + " is not a root of GL(" +
                    std::to_string(rank) + ")");
    }
    if (roots.count(Root{a.j, a.i}) && a.i < a.j) {
      out.push_back("root set contains both " + to_string(a) + " and its negative");
    }
  }
  for (const Root& a : roots) {
    for (const Root& b : roots) {
      if (auto s = compose(a, b); s && !roots.count(*s)) {
        out.push_back("not closed: " + to_string(a) + "+" + to_string(b) + "=" +
                      to_string(*s) + " missing");
        return out;
      }
    }
  }
  std::map<int, Tag> param_tags;
  for (const auto& [root, coef] : chi.support()) {
    if (!roots.count(root)) {
      out.push_back("character supported off the root set at " + to_string(root));
      continue;
    }
    for (const Root& a : roots) {
      if (a == root) continue;
      Root b{a.j, root.j};
      if (a.i == root.i && roots.count(b)) {
        out.push_back("character nonzero on commutator root " + to_string(root));
        break;
      }
    }
    if (coef.tag == Tag::ArbitraryParam || coef.tag == Tag::NonzeroParam) {
      auto [it, inserted] = param_tags.emplace(coef.id, coef.tag);
      if (!inserted) out.push_back("parameter id reused: " + std::to_string(coef.id));
    }
  }
  return out;
}

UnipotentConfig::UnipotentConfig(int rank, RootSet roots, Character chi)
    : rank_(rank), roots_(std::move(roots)), chi_(std::move(chi)) {
  auto issues = problems(rank_, roots_, chi_);
  if (!issues.empty()) {
    bool closure_issue = issues.front().rfind("not closed", 0) == 0;
    throw Error(closure_issue ? ErrorCode::NotClosed : ErrorCode::InvalidArgument,
                issues.front());
  }
}

}  // namespace metaplectic
