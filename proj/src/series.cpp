#include "protek/series.hpp"

#include <string>
#include <utility>

#include "protek/error.hpp"

namespace protek {
namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order() != b.order()) {
    throw Error(ErrorKind::OrderMismatch, "series orders " + std::to_string(a.order()) + " and " +
                                              std::to_string(b.order()) + " differ");
  }
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::size_t order) : coeffs_(order + 1) {}

TruncatedSeries::TruncatedSeries(std::size_t order, std::initializer_list<Rational> coeffs)
    : TruncatedSeries(order, std::vector<Rational>(coeffs)) {}

TruncatedSeries::TruncatedSeries(std::size_t order, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  coeffs_.resize(order + 1);
}

TruncatedSeries TruncatedSeries::monomial(std::size_t order, std::size_t degree, const Rational& c) {
  TruncatedSeries s(order);
  if (degree <= order) s[degree] = c;
  return s;
}

std::size_t TruncatedSeries::valuation() const {
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    if (coeffs_[n] != 0) return n;
  }
  return coeffs_.size();
}

TruncatedSeries TruncatedSeries::truncate(std::size_t order) const {
  if (order > this->order()) {
    throw Error(ErrorKind::OrderMismatch, "cannot truncate order " + std::to_string(this->order()) +
                                              " to larger order " + std::to_string(order));
  }
  return TruncatedSeries(order, std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) {
  os << '[';
  for (std::size_t n = 0; n <= s.order(); ++n) {
    if (n) os << ", ";
    os << to_string(s[n]);
  }
  return os << ']';
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  TruncatedSeries out(a.order());
  for (std::size_t n = 0; n <= a.order(); ++n) out[n] = a[n] + b[n];
  return out;
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  TruncatedSeries out(a.order());
  for (std::size_t n = 0; n <= a.order(); ++n) out[n] = a[n] - b[n];
  return out;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  const std::size_t order = a.order();
  const std::size_t va = a.valuation();
  const std::size_t vb = b.valuation();
  TruncatedSeries out(order);
  for (std::size_t i = va; i <= order; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = vb; i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

TruncatedSeries series_shift(const TruncatedSeries& s) {
  TruncatedSeries out(s.order());
  for (std::size_t n = 1; n <= s.order(); ++n) out[n] = s[n - 1];
  return out;
}

TruncatedSeries series_compose_phi(const CoefficientStream& phi, const TruncatedSeries& inner) {
  if (inner[0] != 0) {
    throw Error(ErrorKind::ValuationError, "inner series has nonzero constant term " + to_string(inner[0]));
  }
  const std::size_t order = inner.order();
  TruncatedSeries acc = TruncatedSeries::monomial(order, 0, phi(order));
  for (std::size_t j = order; j-- > 0;) {
    acc = series_mul(acc, inner);
    acc[0] += phi(j);
  }
  return acc;
}

TruncatedSeries series_compose_phi(std::span<const Rational> phi, const TruncatedSeries& inner) {
  return series_compose_phi(
      [phi](std::size_t j) { return j < phi.size() ? phi[j] : Rational(0); }, inner);
}

}  // namespace protek
