#pragma once

#include <functional>
#include <string>
#include <vector>

namespace metaplectic {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<bool(std::string&)> body;  // fills a one-line detail
};

std::vector<Criterion> acceptance_criteria();

/// Runs one criterion, timing it; a run over its time limit fails.
CriterionResult run_criterion(const Criterion& c);
std::vector<CriterionResult> run_acceptance();

}  // namespace metaplectic
