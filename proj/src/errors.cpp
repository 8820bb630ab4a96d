#include "metaplectic/errors.hpp"

#include <cstdlib>
#include <string>

namespace metaplectic {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MismatchedSize: return "MismatchedSize";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::IncompleteWitnesses: return "IncompleteWitnesses";
    case ErrorCode::UnsupportedOrbit: return "UnsupportedOrbit";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

long long enumeration_budget() {
  constexpr long long kDefault = 10'000'000;
  const char* env = std::getenv("METAPLECTIC_BUDGET");
  if (env == nullptr || *env == '\0') return kDefault;
  try {
    std::size_t pos = 0;
    long long value = std::stoll(env, &pos);
    if (pos != std::string(env).size() || value <= 0) return kDefault;
    return value;
  } catch (const std::exception&) {
    return kDefault;
  }
}

}  // namespace metaplectic
