#include "protek/family.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <utility>

#include "protek/error.hpp"

namespace protek {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::vector<Rational> expand_weights(const ExactForm& form, std::size_t count) {
  std::vector<Rational> w(count);
  if (std::holds_alternative<ExponentialForm>(form)) {
    Rational inv_factorial = 1;
    for (std::size_t j = 0; j < count; ++j) {
      if (j > 0) inv_factorial /= static_cast<unsigned long>(j);
      w[j] = inv_factorial;
    }
    return w;
  }
  const auto& [num, den] = std::get<RationalForm>(form);
  for (std::size_t j = 0; j < count; ++j) {
    Rational acc = j < num.size() ? num[j] : Rational(0);
    for (std::size_t i = 1; i <= j && i < den.size(); ++i) acc -= den[i] * w[j - i];
    w[j] = acc / den[0];
  }
  return w;
}

Real factorial(unsigned m) {
  Real f = 1;
  for (unsigned i = 2; i <= m; ++i) f *= i;
  return f;
}

/// m!/(1-t)^{m+1}, the m-th derivative of 1/(1-t).
Real geometric_derivative(const Real& t, unsigned m) {
  return factorial(m) / pow(Real(1) - t, m + 1);
}

Real polynomial_derivative(const std::vector<Rational>& w, const Real& t, unsigned m) {
  Real acc = 0;
  for (std::size_t j = w.size(); j-- > m;) {
    Rational falling = w[j];
    for (unsigned i = 0; i < m; ++i) falling *= static_cast<unsigned long>(j - i);
    acc = acc * t + to_real(falling);
  }
  return acc;
}

Real polynomial_minus_one(const std::vector<Rational>& w, const Real& t) {
  Real acc = 0;
  for (std::size_t j = w.size(); j-- > 1;) acc = (acc + to_real(w[j])) * t;
  return acc;
}

Real expm1_real(const Real& t) {
  Real out;
  mpfr_expm1(out.backend().data(), t.backend().data(), MPFR_RNDN);
  return out;
}

WeightFamily polynomial_family(std::string name, std::vector<Rational> w) {
  auto phi = [w](const Real& t, unsigned m) { return polynomial_derivative(w, t, m); };
  auto shifted = [w](const Real& t) { return polynomial_minus_one(w, t); };
  return WeightFamily(std::move(name), RationalForm{w, {Rational(1)}}, std::move(phi), std::move(shifted),
                      kInfinity);
}

}  // namespace

WeightFamily::WeightFamily(std::string name, ExactForm form, DerivativeEvaluator phi,
                           ShiftedEvaluator phi_minus_one, double radius)
    : name_(std::move(name)),
      form_(std::move(form)),
      phi_(std::move(phi)),
      phi_minus_one_(std::move(phi_minus_one)),
      radius_(radius) {
  std::size_t window = kSupportWindow;
  if (const auto* rf = std::get_if<RationalForm>(&form_); rf && rf->denominator.size() == 1) {
    window = std::max<std::size_t>(rf->numerator.size(), 1);
  }
  head_ = expand_weights(form_, window);
  for (std::size_t j = 0; j < head_.size(); ++j) {
    if (head_[j] != 0) support_.push_back(j);
  }
}

Rational WeightFamily::weight(std::size_t j) const {
  if (j < head_.size()) return head_[j];
  if (const auto* rf = std::get_if<RationalForm>(&form_); rf && rf->denominator.size() == 1) return 0;
  return expand_weights(form_, j + 1)[j];
}

std::vector<Rational> WeightFamily::weights(std::size_t count) const {
  if (count <= head_.size()) return {head_.begin(), head_.begin() + count};
  if (const auto* rf = std::get_if<RationalForm>(&form_); rf && rf->denominator.size() == 1) {
    std::vector<Rational> w = head_;
    w.resize(count);
    return w;
  }
  return expand_weights(form_, count);
}

WeightFamily make_builtin(std::string_view name) {
  if (name == "plane") {
    auto phi = [](const Real& t, unsigned m) { return geometric_derivative(t, m); };
    auto shifted = [](const Real& t) { return Real(t / (Real(1) - t)); };
    return WeightFamily("plane", RationalForm{{1}, {1, -1}}, phi, shifted, 1.0);
  }
  if (name == "binary" || name == "complete-binary") {
    return polynomial_family(std::string(name), {1, 0, 1});
  }
  if (name == "pruned-binary") {
    return polynomial_family("pruned-binary", {1, 2, 1});
  }
  if (name == "cayley") {
    auto phi = [](const Real& t, unsigned) { return Real(exp(t)); };
    return WeightFamily("cayley", ExponentialForm{}, phi, expm1_real, kInfinity);
  }
  if (name == "riordan") {
    // 1/(1-t) - t = (1 - t + t^2)/(1 - t)
    auto phi = [](const Real& t, unsigned m) {
      Real value = geometric_derivative(t, m);
      if (m == 0) value -= t;
      if (m == 1) value -= 1;
      return value;
    };
    auto shifted = [](const Real& t) { return Real(t * t / (Real(1) - t)); };
    return WeightFamily("riordan", RationalForm{{1, -1, 1}, {1, -1}}, phi, shifted, 1.0);
  }
  throw Error(ErrorKind::UnknownFamily, "'" + std::string(name) + "' (known: plane, binary, complete-binary, "
                                        "pruned-binary, cayley, riordan)");
}

std::vector<std::string> builtin_names() {
  return {"plane", "binary", "complete-binary", "pruned-binary", "cayley", "riordan"};
}

WeightFamily make_polynomial(std::vector<Rational> weights) {
  while (weights.size() > 1 && weights.back() == 0) weights.pop_back();
  if (weights.empty() || weights[0] != 1) {
    throw Error(ErrorKind::InvalidWeights, "w_0 must equal 1");
  }
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] < 0) {
      throw Error(ErrorKind::InvalidWeights, "w_" + std::to_string(j) + " = " + to_string(weights[j]) +
                                                 " is negative; all weights must be >= 0");
    }
  }
  if (weights.size() < 3) {
    throw Error(ErrorKind::InvalidWeights, "some w_j with j >= 2 must be positive");
  }
  std::string name = "weights:";
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (j) name += ',';
    name += to_string(weights[j]);
  }
  return polynomial_family(std::move(name), std::move(weights));
}

std::vector<Rational> parse_weight_list(std::string_view text) {
  std::vector<Rational> out;
  while (true) {
    const auto comma = text.find(',');
    auto item = text.substr(0, comma);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    out.push_back(parse_rational(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

FamilyStructure family_structure(const WeightFamily& family) {
  FamilyStructure s;
  s.w1_zero = family.weight(1) == 0;
  s.r = 0;
  int g = 0;
  for (std::size_t j : family.support_hint()) {
    if (j == 0) continue;
    g = std::gcd(g, static_cast<int>(j));
    if (j >= 2 && s.r == 0) s.r = static_cast<int>(j);
  }
  s.period = g == 0 ? 1 : g;
  return s;
}

}  // namespace protek
