#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace protek {

/// Exact scalar for weights and series coefficients. GMP keeps results of
/// arithmetic canonical (positive denominator, coprime parts).
using Rational = mpq_class;

/// Parses "p" or "p/q" with an optional leading sign; throws
/// Error(InvalidArgument) on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& value);

}  // namespace protek
