#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

#include "protek/rational.hpp"

namespace protek {

/// Arbitrary-precision binary floating point. New values take the precision
/// that is current when they are created (see PrecisionGuard).
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionBits = 256;

/// Current working precision in bits.
unsigned precision_bits();

/// Sets the working precision for the lifetime of the guard and restores the
/// previous value on exit. The setting is process-wide, so real-valued
/// computations at different precisions must not overlap in time.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_digits10_;
};

Real to_real(const Rational& value);

/// 2^exponent at the working precision.
Real pow2(long exponent);

/// printf-style "%.{digits}g" rendering, deterministic across runs.
std::string format_real(const Real& value, int significant_digits = 17);

double to_double(const Real& value);

}  // namespace protek

namespace protek {

/// Correctly rounded double nearest to value.
double rational_to_double(const Rational& value);

/// "%.{digits}g" rendering of an exact rational (rounded once, from 256 bits).
std::string format_rational(const Rational& value, int significant_digits = 17);

}  // namespace protek
