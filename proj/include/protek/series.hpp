#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "protek/rational.hpp"

namespace protek {

/// Formal power series c_0 + c_1 x + ... + c_N x^N, truncated at order N.
class TruncatedSeries {
 public:
  /// The zero series of the given order.
  explicit TruncatedSeries(std::size_t order = 0);
  /// Coefficients listed from c_0; missing trailing coefficients are zero and
  /// extra ones are dropped.
  TruncatedSeries(std::size_t order, std::initializer_list<Rational> coeffs);
  TruncatedSeries(std::size_t order, std::vector<Rational> coeffs);

  static TruncatedSeries monomial(std::size_t order, std::size_t degree, const Rational& c = 1);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t n) const { return coeffs_[n]; }
  Rational& operator[](std::size_t n) { return coeffs_[n]; }
  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  /// Index of the first nonzero coefficient, or order()+1 for the zero series.
  std::size_t valuation() const;

  /// The same series viewed at a lower order.
  TruncatedSeries truncate(std::size_t order) const;

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s);

/// Coefficient-wise sum; throws Error(OrderMismatch) unless orders agree.
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);

/// Cauchy product truncated at the common order.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// x * s, dropping the coefficient pushed past the order.
TruncatedSeries series_shift(const TruncatedSeries& s);

/// Coefficient j of a weight generating function; may be nonzero for all j.
using CoefficientStream = std::function<Rational(std::size_t)>;

/// Phi(inner) truncated at inner.order(), by Horner evaluation of the
/// degree-N truncation of Phi. inner must have a zero constant term so that
/// only phi(0..N) contribute; throws Error(ValuationError) otherwise.
TruncatedSeries series_compose_phi(const CoefficientStream& phi, const TruncatedSeries& inner);
TruncatedSeries series_compose_phi(std::span<const Rational> phi, const TruncatedSeries& inner);

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return series_add(a, b); }
inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return series_sub(a, b); }
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return series_mul(a, b); }

}  // namespace protek
