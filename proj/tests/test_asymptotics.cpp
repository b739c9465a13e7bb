#include <doctest.h>

#include <cmath>
#include <numbers>

#include "protek/asymptotics.hpp"
#include "protek/counting.hpp"
#include "protek/error.hpp"

using namespace protek;

namespace {

bool close(const Real& a, const Real& b, double tol) { return abs(a - b) <= Real(tol); }

}  // namespace

TEST_CASE("tau and rho") {
  PrecisionGuard guard(256);
  auto plane = solve_tau_rho(make_builtin("plane"));
  CHECK(close(plane.tau, Real(0.5), 1e-30));
  CHECK(close(plane.rho, Real(0.25), 1e-30));
  auto cayley = solve_tau_rho(make_builtin("cayley"));
  CHECK(close(cayley.tau, Real(1), 1e-30));
  CHECK(close(cayley.rho, exp(Real(-1)), 1e-30));
  auto riordan = solve_tau_rho(make_builtin("riordan"));
  CHECK(close(riordan.tau, Real(0.5), 1e-30));
  CHECK(close(riordan.rho, Real(1) / 3, 1e-30));

  for (const auto& name : builtin_names()) {
    auto f = make_builtin(name);
    auto c = compute_constants(f);
    CAPTURE(name);
    CHECK(close(c.rho * f.phi(c.tau, 1), Real(1), 1e-25));
    CHECK(close(c.rho * c.phi_tau, c.tau, 1e-25));
    CHECK(c.tau > c.rho);
    CHECK(c.rho > 0);
    CHECK(c.a < 0);
    CHECK(close(c.a * c.a, 2 * c.phi_tau / c.phi2_tau, 1e-25));
    CHECK(c.d > 1);
    CHECK(c.kappa > 0);
  }
}

TEST_CASE("no tau below the radius") {
  // 1 + t^2/4 declared with radius 1: t Phi'(t) - Phi(t) = t^2/4 - 1 < 0 on (0, 1)
  auto phi = [](const Real& t, unsigned m) -> Real {
    if (m == 0) return 1 + t * t / 4;
    if (m == 1) return t / 2;
    return m == 2 ? Real(0.5) : Real(0);
  };
  auto shifted = [](const Real& t) { return Real(t * t / 4); };
  WeightFamily f("truncated", RationalForm{{1, 0, Rational(1, 4)}, {1}}, phi, shifted, 1.0);
  try {
    solve_tau_rho(f);
    FAIL("expected NoTau");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoTau);
  }
}

TEST_CASE("eta sequence") {
  PrecisionGuard guard(256);
  auto plane = make_builtin("plane");
  auto c = compute_constants(plane);
  auto eta = eta_sequence(c, plane, 30);
  CHECK(close(eta[1], c.tau - c.rho, 1e-40));
  CHECK(close(eta[2], Real(1) / 12, 1e-40));
  for (std::size_t k = 1; k < eta.size(); ++k) {
    CHECK(eta[k] < eta[k - 1]);
    CHECK(eta[k] > 0);
  }
  CHECK(close(eta[30] / eta[29], c.zeta, 1e-15));

  auto cb = make_builtin("complete-binary");
  auto cc = compute_constants(cb);
  auto e2 = eta_sequence(cc, cb, 6);
  for (int k = 0; k <= 6; ++k) CHECK(close(e2[k], 2 * pow(Real(0.5), pow(Real(2), Real(k))), 1e-60));

  auto riordan = make_builtin("riordan");
  auto cr = compute_constants(riordan);
  auto e3 = eta_sequence(cr, riordan, 10);
  CHECK(close(log(e3[10]) / log(e3[9]), Real(2), 1e-2));
}

TEST_CASE("exponential constants") {
  PrecisionGuard guard(256);
  auto plane = constants_exponential(make_builtin("plane"));
  CHECK(close(plane.kappa, Real(9) / 16, 1e-40));
  CHECK(close(plane.d, Real(4), 1e-40));
  CHECK(close(plane.lambda1, Real(1.5), 1e-40));
  CHECK(close(plane.kappa, plane.lambda1 * (1 - plane.zeta) * plane.zeta / (plane.rho * plane.phi_tau), 1e-40));

  auto pruned = constants_exponential(make_builtin("pruned-binary"));
  CHECK(close(pruned.d, Real(2), 1e-40));
  CHECK(close(pruned.lambda1, Real(3.664), 2e-3));
  CHECK(close(pruned.kappa, Real(0.9160), 1e-4));

  auto cayley = constants_exponential(make_builtin("cayley"));
  CHECK(close(cayley.d, exp(Real(1)), 1e-40));
  CHECK(close(cayley.lambda1, Real(3.1789), 1e-4));
  CHECK(close(cayley.kappa, cayley.lambda1 * (1 - exp(Real(-1))) / exp(Real(1)), 1e-40));

  try {
    constants_exponential(make_builtin("riordan"));
    FAIL("expected WrongRegime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongRegime);
  }
}

TEST_CASE("double-exponential constants") {
  PrecisionGuard guard(256);
  auto cb = constants_doubleexp(make_builtin("complete-binary"));
  CHECK(cb.r == 2);
  CHECK(cb.D == 2);
  CHECK(close(cb.lambda1, Real(2), 1e-40));
  CHECK(close(cb.mu, Real(0.5), 1e-40));
  CHECK(close(cb.d, Real(4), 1e-40));
  CHECK(close(cb.kappa, Real(2), 1e-40));

  auto riordan = constants_doubleexp(make_builtin("riordan"));
  CHECK(riordan.r == 2);
  CHECK(riordan.D == 1);
  CHECK(close(riordan.lambda1, Real(3), 1e-40));
  CHECK(close(riordan.kappa, Real(6), 1e-40));
  CHECK(riordan.mu > 0);
  CHECK(riordan.mu < 1);

  auto cubic = constants_doubleexp(make_polynomial({1, 0, 0, 1}));
  CHECK(cubic.r == 3);
  CHECK(cubic.D == 3);
  const Real rho = Real(2) / 3 * pow(Real(2), Real(-1) / 3);
  CHECK(close(cubic.rho, rho, 1e-40));
  CHECK(close(cubic.lambda1, pow(rho, Real(-0.5)), 1e-40));
  CHECK(close(cubic.lambda1, Real(1.37473), 1e-5));

  CHECK_THROWS_AS(constants_doubleexp(make_builtin("plane")), Error);
}

TEST_CASE("mu agrees with the eta limit") {
  PrecisionGuard guard(512);
  auto f = make_builtin("riordan");
  auto c = constants_doubleexp(f);
  auto eta = eta_sequence(c, f, 8);
  // eta_k ~ lambda1 mu^{r^k}
  const Real estimate = exp(log(eta[8] / c.lambda1) / pow(Real(2), Real(8)));
  CHECK(close(estimate, c.mu, 1e-70));
}

TEST_CASE("asymptotic cdf") {
  PrecisionGuard guard(256);
  auto plane = compute_constants(make_builtin("plane"));
  CHECK(to_double(cdf_asymptotic(plane, 200, 5)) == doctest::Approx(std::exp(-9.0 / 16 * 200 / 1024)).epsilon(1e-14));
  CHECK(to_double(cdf_asymptotic(plane, 200, 5)) == doctest::Approx(0.895954).epsilon(1e-5));
  auto cb = compute_constants(make_builtin("complete-binary"));
  CHECK(to_double(cdf_asymptotic(cb, 205, 2)) == doctest::Approx(0.201597).epsilon(1e-4));
  CHECK(to_double(cdf_asymptotic(plane, 200, 400)) == doctest::Approx(1.0));
  CHECK(to_double(cdf_asymptotic(cb, 205, 12)) == doctest::Approx(1.0));
}

TEST_CASE("complex gamma") {
  using C = std::complex<double>;
  CHECK(std::abs(complex_gamma(C(5, 0)) - C(24, 0)) < 1e-11);
  CHECK(std::abs(complex_gamma(C(0.5, 0)) - C(std::sqrt(std::numbers::pi), 0)) < 1e-13);
  // Gamma(1 + i) = 0.4980156681183560 - 0.1549498283018106 i
  CHECK(std::abs(complex_gamma(C(1, 1)) - C(0.4980156681183560, -0.1549498283018106)) < 1e-13);
  for (double y : {0.5, 1.0, 2.5, 4.532, 9.06, 20.0}) {
    const double expected = std::numbers::pi / (y * std::sinh(std::numbers::pi * y));
    CHECK(std::norm(complex_gamma(C(0, y))) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("psi_d") {
  for (double x : {0.0, 0.13, 0.5, 0.77}) {
    CHECK(std::abs(psi_d(4, x) - psi_d(4, x + 1)) < 1e-12);
    CHECK(std::abs(psi_d(std::exp(1.0), x) - psi_d(std::exp(1.0), x + 3)) < 1e-12);
  }
  // |psi_4| <= (2 / log 4) sum_k |Gamma(2 k pi i / log 4)|
  const double L = std::log(4.0);
  double bound = 0;
  for (int k = 1; k <= 10; ++k) {
    const double y = 2 * std::numbers::pi * k / L;
    bound += std::sqrt(std::numbers::pi / (y * std::sinh(std::numbers::pi * y)));
  }
  bound *= 2 / L;
  CHECK(bound <= 2e-3);
  for (int i = 0; i < 50; ++i) CHECK(std::abs(psi_d(4, i / 50.0)) <= bound);
}

TEST_CASE("asymptotic expectation") {
  PrecisionGuard guard(256);
  auto plane = compute_constants(make_builtin("plane"));
  const double e = to_double(expectation_asymptotic(plane, 200));
  const double L = std::log(4.0);
  const double smooth = std::log(200.0) / L + std::log(9.0 / 16) / L + std::numbers::egamma / L + 0.5;
  CHECK(smooth == doctest::Approx(4.3233).epsilon(1e-4));
  CHECK(std::abs(e - smooth) <= 2e-3);
  auto cb = compute_constants(make_builtin("complete-binary"));
  CHECK_THROWS_AS(expectation_asymptotic(cb, 205), Error);
}

TEST_CASE("rho_h, exponential regime") {
  auto plane = make_builtin("plane");
  PrecisionGuard guard(256);
  auto c = compute_constants(plane);
  Real prev = 1;
  for (int h : {2, 4, 8, 12, 14}) {
    auto s = solve_rho_h(plane, h, 256);
    CAPTURE(h);
    CHECK(s.rho_h > c.rho);
    CHECK(s.rho_h < prev);
    prev = s.rho_h;
    CHECK(s.eta.size() == static_cast<std::size_t>(h) + 1);
    CHECK(close(s.eta[0] - s.eta[1], s.rho_h, 1e-35));
    for (int k = 1; k <= h; ++k) CHECK(s.eta[k] <= s.eta[k - 1]);
    for (const auto& r : s.residuals) CHECK(abs(r) < pow2(-128));
  }
  auto s12 = solve_rho_h(plane, 12, 256);
  CHECK(close((s12.rho_h - c.rho) / (Real(9) / 16 * pow(Real(4), Real(-13))), Real(1), 1e-2));

  auto s14 = solve_rho_h(plane, 14, 256);
  const Real zh = pow(c.zeta, Real(14));
  CHECK(close(s14.eta[14] / (c.lambda1 * (1 - c.zeta) * zh), Real(1), 0.05));
  CHECK(close((s14.rho_h * plane.phi(s14.eta[0], 1) - 1) / (c.lambda2 * (1 - c.zeta) * zh), Real(1), 0.05));

  CHECK_THROWS_AS(solve_rho_h(plane, 1, 256), Error);
}

TEST_CASE("rho_h, double-exponential regime") {
  auto cb = make_builtin("complete-binary");
  PrecisionGuard guard(256);
  auto c = compute_constants(cb);
  auto s3 = solve_rho_h(cb, 3, 256);
  const Real lead = Real(0.5) * 2 * pow(Real(0.5), Real(16));
  CHECK(close((s3.rho_h - c.rho) / lead, Real(1), 0.05));
  CHECK(close(rho_h_leading_term(c, 3), lead, 1e-40));
  auto s4 = solve_rho_h(cb, 4, 256);
  CHECK(s4.rho_h > c.rho);
  CHECK(s4.rho_h < s3.rho_h);
}

TEST_CASE("coefficient asymptotics") {
  PrecisionGuard guard(256);
  auto plane = compute_constants(make_builtin("plane"));
  CHECK(close(plane.a, Real(-0.5), 1e-40));
  auto y = solve_Y(make_builtin("plane"), 60);
  CHECK(close(count_asymptotic(plane, 60) / to_real(y[60]), Real(1), 0.01));

  auto cb = compute_constants(make_builtin("complete-binary"));
  auto yb = solve_Y(make_builtin("complete-binary"), 61);
  CHECK(close(count_asymptotic(cb, 61) / to_real(yb[61]), Real(1), 0.03));
  try {
    count_asymptotic(cb, 60);
    FAIL("expected PeriodMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PeriodMismatch);
  }
}

TEST_CASE("two-point predictor") {
  PrecisionGuard guard(256);
  auto cb = compute_constants(make_builtin("complete-binary"));
  auto p205 = two_point_predictor(cb, 205);
  CHECK(to_double(p205.m_n) == doctest::Approx(1.9413).epsilon(1e-3));
  CHECK(p205.h_n == 2);
  auto p17 = two_point_predictor(cb, 17);
  CHECK(to_double(p17.m_n) == doctest::Approx(1.0312).epsilon(1e-3));
  CHECK(p17.h_n == 1);
  CHECK(two_point_round(Real(2.5)) == 2);
  CHECK(two_point_round(Real(2.5) + pow2(-200)) == 3);
  CHECK(two_point_round(Real(3)) == 3);

  int prev = two_point_predictor(cb, 17).h_n;
  for (long n = 18; n < 200000; n += 97) {
    const int h = two_point_predictor(cb, n).h_n;
    CHECK(h >= prev);
    CHECK(h <= prev + 1);
    prev = h;
  }
  CHECK_THROWS_AS(two_point_predictor(compute_constants(make_builtin("plane")), 100), Error);
  CHECK_THROWS_AS(two_point_predictor(cb, 3), Error);
}
