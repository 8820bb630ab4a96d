#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace metaplectic {

enum class ErrorCode {
  InvalidArgument,
  MismatchedSize,
  RankMismatch,
  BudgetExceeded,
  UnknownName,
  NotASubgroup,
  NotContained,
  NotClosed,
  ConfigMismatch,
  IncompleteWitnesses,
  UnsupportedOrbit,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the CLI
/// reports it as {"error": {"code": ..., "detail": ...}}.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Enumeration budget: METAPLECTIC_BUDGET when set, otherwise 10^7.
long long enumeration_budget();

}  // namespace metaplectic
