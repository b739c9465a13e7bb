#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "protek/rational.hpp"
#include "protek/real.hpp"

namespace protek {

/// Phi = numerator / denominator as polynomials in t (coefficients from t^0),
/// with denominator[0] != 0. Polynomials have denominator {1}.
struct RationalForm {
  std::vector<Rational> numerator;
  std::vector<Rational> denominator;
};

/// Phi = e^t.
struct ExponentialForm {};

/// Exact description of Phi, used for coefficient extraction and for
/// composing Phi with power series.
using ExactForm = std::variant<RationalForm, ExponentialForm>;

struct FamilyStructure {
  bool w1_zero = false;
  /// Smallest index >= 2 with nonzero weight.
  int r = 2;
  /// gcd of the positive indices with nonzero weight.
  int period = 1;

  friend bool operator==(const FamilyStructure&, const FamilyStructure&) = default;
};

/// A simply generated tree family, given by its weight generating function
/// Phi(t) = sum_j w_j t^j with w_0 = 1.
class WeightFamily {
 public:
  /// Phi^(m)(t) at the working precision.
  using DerivativeEvaluator = std::function<Real(const Real& t, unsigned m)>;
  /// Phi(t) - 1, evaluated without cancellation for small t.
  using ShiftedEvaluator = std::function<Real(const Real& t)>;

  WeightFamily(std::string name, ExactForm form, DerivativeEvaluator phi, ShiftedEvaluator phi_minus_one,
               double radius);

  const std::string& name() const noexcept { return name_; }
  const ExactForm& form() const noexcept { return form_; }

  Rational weight(std::size_t j) const;
  /// w_0 .. w_{count-1}.
  std::vector<Rational> weights(std::size_t count) const;

  Real phi(const Real& t, unsigned m = 0) const { return phi_(t, m); }
  Real phi_minus_one(const Real& t) const { return phi_minus_one_(t); }

  /// Radius of convergence of Phi; +infinity for entire functions.
  double radius() const noexcept { return radius_; }

  /// Nonzero-weight indices among the first kSupportWindow weights (all of
  /// them for polynomials).
  const std::vector<std::size_t>& support_hint() const noexcept { return support_; }

  static constexpr std::size_t kSupportWindow = 64;

 private:
  std::string name_;
  ExactForm form_;
  DerivativeEvaluator phi_;
  ShiftedEvaluator phi_minus_one_;
  double radius_;
  std::vector<Rational> head_;
  std::vector<std::size_t> support_;
};

/// plane, binary (alias complete-binary), pruned-binary, cayley, riordan.
/// Throws Error(UnknownFamily) otherwise.
WeightFamily make_builtin(std::string_view name);

std::vector<std::string> builtin_names();

/// Finite weight sequence w_0..w_m. Throws Error(InvalidWeights) naming the
/// violated requirement (w_0 = 1, all w_j >= 0, some w_j > 0 with j >= 2).
WeightFamily make_polynomial(std::vector<Rational> weights);

/// Parses a comma-separated weight list such as "1,0,1" or "1,1/2,1/6".
std::vector<Rational> parse_weight_list(std::string_view text);

FamilyStructure family_structure(const WeightFamily& family);

}  // namespace protek
