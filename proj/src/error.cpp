#include "protek/error.hpp"

namespace protek {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::ValuationError: return "ValuationError";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::PeriodMismatch: return "PeriodMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NoTau: return "NoTau";
    case ErrorKind::WrongRegime: return "WrongRegime";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace protek
