#include "protek/counting.hpp"

#include <algorithm>
#include <string>

#include "online_compose.hpp"
#include "protek/error.hpp"
#include "protek/real.hpp"

namespace protek {
namespace {

template <class C>
std::vector<C> solve_Y_online(const ExactForm& form, std::size_t order) {
  std::vector<C> y(order + 1, C(0));
  detail::OnlineComposer<C> phi_y(form, order);
  for (std::size_t n = 1; n <= order; ++n) {
    y[n] = phi_y[n - 1];
    phi_y.push(y[n]);
  }
  return y;
}

// ys[k][n] = [x^n] Y_{h,k}.
template <class C>
std::vector<std::vector<C>> solve_system_online(const ExactForm& form, int h, std::size_t order) {
  const auto levels = static_cast<std::size_t>(h) + 1;
  std::vector<std::vector<C>> ys(levels, std::vector<C>(order + 1, C(0)));
  std::vector<detail::OnlineComposer<C>> phi(levels, detail::OnlineComposer<C>(form, order));
  const std::size_t top = levels - 1;
  for (std::size_t n = 1; n <= order; ++n) {
    const C& phi_top = phi[top][n - 1];
    for (std::size_t k = 1; k <= top; ++k) ys[k][n] = phi[k - 1][n - 1] - phi_top;
    ys[0][n] = ys[1][n];
    if (n == 1) ys[0][n] += 1;
    for (std::size_t k = 0; k <= top; ++k) phi[k].push(ys[k][n]);
  }
  return ys;
}

template <class C>
TruncatedSeries to_series(const std::vector<C>& coeffs) {
  std::vector<Rational> out(coeffs.begin(), coeffs.end());
  const std::size_t order = out.size() - 1;
  return TruncatedSeries(order, std::move(out));
}

void require_positive_order(std::size_t order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "truncation order must be >= 1");
}

void require_positive_h(int h) {
  if (h < 1) throw Error(ErrorKind::InvalidArgument, "h must be >= 1, got " + std::to_string(h));
}

}  // namespace

TruncatedSeries solve_Y(const WeightFamily& family, std::size_t order) {
  require_positive_order(order);
  if (detail::has_integer_weights(family.form())) return to_series(solve_Y_online<mpz_class>(family.form(), order));
  return to_series(solve_Y_online<Rational>(family.form(), order));
}

TruncatedSeries solve_Y_by_sweeps(const WeightFamily& family, std::size_t order) {
  require_positive_order(order);
  const auto phi = family.weights(order + 1);
  TruncatedSeries y(order);
  for (std::size_t sweep = 0; sweep < order; ++sweep) y = series_shift(series_compose_phi(phi, y));
  return y;
}

ProtectionSeriesSet solve_protection_system(const WeightFamily& family, int h, std::size_t order) {
  require_positive_h(h);
  require_positive_order(order);
  ProtectionSeriesSet set{h, order, {}};
  auto convert = [&](const auto& ys) {
    for (const auto& coeffs : ys) set.series.push_back(to_series(coeffs));
  };
  if (detail::has_integer_weights(family.form())) {
    convert(solve_system_online<mpz_class>(family.form(), h, order));
  } else {
    convert(solve_system_online<Rational>(family.form(), h, order));
  }
  return set;
}

ProtectionSeriesSet solve_protection_system_by_sweeps(const WeightFamily& family, int h, std::size_t order) {
  require_positive_h(h);
  require_positive_order(order);
  const auto phi = family.weights(order + 1);
  const auto top = static_cast<std::size_t>(h);
  std::vector<TruncatedSeries> ys(top + 1, TruncatedSeries(order));
  const TruncatedSeries x = TruncatedSeries::monomial(order, 1);
  for (std::size_t sweep = 0; sweep < order; ++sweep) {
    for (std::size_t k = top; k >= 1; --k) {
      ys[k] = series_shift(series_compose_phi(phi, ys[k - 1]) - series_compose_phi(phi, ys[top]));
    }
    ys[0] = ys[1] + x;
  }
  return {h, order, std::move(ys)};
}

TruncatedSeries bounded_protection_series(const WeightFamily& family, int h, std::size_t order) {
  require_positive_order(order);
  if (h < 0) throw Error(ErrorKind::InvalidArgument, "h must be >= 0");
  if (h == 0) return TruncatedSeries::monomial(order, 1);
  if (detail::has_integer_weights(family.form())) {
    return to_series(solve_system_online<mpz_class>(family.form(), h, order).front());
  }
  return to_series(solve_system_online<Rational>(family.form(), h, order).front());
}

void require_size_in_period(const WeightFamily& family, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "tree size must be >= 1");
  const auto period = static_cast<std::size_t>(family_structure(family).period);
  if ((n - 1) % period != 0) {
    throw Error(ErrorKind::PeriodMismatch, "family " + family.name() + " has period " + std::to_string(period) +
                                               ", so there are no trees of size " + std::to_string(n) +
                                               " (need n = 1 mod " + std::to_string(period) + ")");
  }
}

std::vector<CdfTable> cdf_exact_multi(const WeightFamily& family, std::span<const std::size_t> sizes,
                                      std::span<const int> hmax) {
  if (sizes.size() != hmax.size()) throw Error(ErrorKind::InvalidArgument, "one hmax per size required");
  if (sizes.empty()) return {};
  for (std::size_t n : sizes) require_size_in_period(family, n);

  const std::size_t order = std::max<std::size_t>(*std::max_element(sizes.begin(), sizes.end()), 1);
  std::vector<int> top(sizes.size());
  int top_h = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    top[i] = std::max(0, std::min(hmax[i], static_cast<int>(sizes[i]) - 1));
    top_h = std::max(top_h, top[i]);
  }

  const TruncatedSeries y = solve_Y(family, order);
  std::vector<CdfTable> tables(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    tables[i].family = family.name();
    tables[i].n = sizes[i];
    const Rational p0 = sizes[i] == 1 ? 1 : 0;
    tables[i].rows.push_back({0, p0, rational_to_double(p0)});
  }
  for (int h = 1; h <= top_h; ++h) {
    const TruncatedSeries bounded = bounded_protection_series(family, h, order);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (h > top[i]) continue;
      const std::size_t n = sizes[i];
      if (y[n] == 0) throw Error(ErrorKind::PeriodMismatch, "no trees of size " + std::to_string(n));
      Rational p = bounded[n] / y[n];
      const double pf = rational_to_double(p);
      tables[i].rows.push_back({h, std::move(p), pf});
    }
  }
  return tables;
}

CdfTable cdf_exact(const WeightFamily& family, std::size_t n, int hmax) {
  const std::size_t sizes[] = {n};
  const int tops[] = {hmax};
  return std::move(cdf_exact_multi(family, sizes, tops).front());
}

Rational expectation_exact(const WeightFamily& family, std::size_t n) {
  require_size_in_period(family, n);
  if (n == 1) return 0;
  const TruncatedSeries y = solve_Y(family, n);
  // h = 0 contributes 1 since P(X_n <= 0) = 0 for n > 1.
  Rational expectation = 1;
  for (int h = 1; h <= static_cast<int>(n) - 2; ++h) {
    const TruncatedSeries bounded = bounded_protection_series(family, h, n);
    if (bounded[n] == y[n]) break;  // P(X_n <= h) = 1 from here on
    expectation += 1 - bounded[n] / y[n];
  }
  return expectation;
}

}  // namespace protek
