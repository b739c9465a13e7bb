#pragma once

// Coefficient-at-a-time composition Phi(A) for a power series A with A(0) = 0.
// Coefficients of A are appended one at a time; [x^n] Phi(A) becomes available
// as soon as a_1..a_n are known. This lets the functional equations be solved
// in a single pass over n instead of N full fixed-point sweeps.

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <type_traits>
#include <variant>
#include <vector>

#include "protek/error.hpp"
#include "protek/family.hpp"

namespace protek::detail {

/// True when every weight is an integer, so mpz arithmetic gives the same
/// coefficients as mpq arithmetic.
inline bool has_integer_weights(const ExactForm& form) {
  const auto* rf = std::get_if<RationalForm>(&form);
  if (rf == nullptr) return false;
  for (const auto& c : rf->numerator)
    if (c.get_den() != 1) return false;
  for (const auto& c : rf->denominator)
    if (c.get_den() != 1) return false;
  return abs(rf->denominator[0]) == 1;
}

template <class C>
C from_rational(const Rational& q) {
  if constexpr (std::is_same_v<C, mpz_class>) {
    return q.get_num();
  } else {
    return q;
  }
}

template <class C>
class OnlineComposer {
 public:
  OnlineComposer(const ExactForm& form, std::size_t order) {
    values_.reserve(order + 1);
    inner_.reserve(order + 1);
    inner_.push_back(C(0));
    if (const auto* rf = std::get_if<RationalForm>(&form)) {
      exponential_ = false;
      for (const auto& c : rf->numerator) num_.push_back(from_rational<C>(c));
      for (const auto& c : rf->denominator) den_.push_back(from_rational<C>(c));
      const std::size_t degree = std::max(num_.size(), den_.size()) - 1;
      powers_.assign(degree + 1, {});
      values_.push_back(num_[0] / den_[0]);
    } else {
      exponential_ = true;
      values_.push_back(C(1));
    }
  }

  /// Appends the next coefficient a_n of the inner series (n = 1, 2, ...).
  void push(const C& a) {
    const std::size_t n = inner_.size();
    inner_.push_back(a);
    if (valuation_ == kNone && a != 0) valuation_ = n;
    values_.push_back(exponential_ ? next_exponential(n) : next_rational(n));
  }

  /// [x^n] Phi(A); requires n <= number of pushed coefficients.
  const C& operator[](std::size_t n) const { return values_[n]; }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // [x^n] A^j for j >= 2 from A^{j-1}.
  void extend_powers(std::size_t n) {
    for (std::size_t j = 2; j < powers_.size(); ++j) {
      auto& pj = powers_[j];
      const auto& prev = (j == 2) ? inner_ : powers_[j - 1];
      C acc = 0;
      if (valuation_ != kNone && n >= j * valuation_) {
        for (std::size_t i = valuation_; i + (j - 1) * valuation_ <= n; ++i) acc += inner_[i] * prev[n - i];
      }
      if (pj.empty()) pj.push_back(C(0));
      pj.push_back(acc);
    }
  }

  const C& power(std::size_t j, std::size_t n) const { return j == 1 ? inner_[n] : powers_[j][n]; }

  C compose_poly(const std::vector<C>& poly, std::size_t n) const {
    C acc = 0;
    for (std::size_t j = 1; j < poly.size(); ++j) {
      if (poly[j] != 0) acc += poly[j] * power(j, n);
    }
    return acc;
  }

  C next_rational(std::size_t n) {
    extend_powers(n);
    C acc = compose_poly(num_, n);
    if (den_.size() > 1) {
      den_at_.resize(n + 1);
      den_at_[n] = compose_poly(den_, n);
      if (valuation_ != kNone) {
        for (std::size_t i = valuation_; i <= n; ++i) {
          if (den_at_[i] != 0) acc -= den_at_[i] * values_[n - i];
        }
      }
    }
    if (den_[0] != 1) acc /= den_[0];
    return acc;
  }

  C next_exponential(std::size_t n) {
    if constexpr (std::is_same_v<C, mpz_class>) {
      throw Error(ErrorKind::InvalidArgument, "exponential weights need rational coefficients");
    } else {
      // B = exp(A) satisfies B' = A' B.
      C acc = 0;
      if (valuation_ != kNone) {
        for (std::size_t k = valuation_; k <= n; ++k) acc += static_cast<unsigned long>(k) * inner_[k] * values_[n - k];
      }
      acc /= static_cast<unsigned long>(n);
      return acc;
    }
  }

  bool exponential_ = false;
  std::vector<C> num_, den_;
  std::vector<C> inner_;
  std::vector<C> values_;
  std::vector<std::vector<C>> powers_;
  std::vector<C> den_at_;
  std::size_t valuation_ = kNone;
};

}  // namespace protek::detail
