#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace protek {

enum class ErrorKind {
  OrderMismatch,
  ValuationError,
  UnknownFamily,
  InvalidWeights,
  PeriodMismatch,
  CapExceeded,
  NoTau,
  WrongRegime,
  NoConvergence,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure surfaced by the library carries one of the kinds above so the
/// CLI can map it to a message and exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace protek
