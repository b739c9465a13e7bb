#include "protek/asymptotics.hpp"

#include <mpfr.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "protek/error.hpp"

namespace protek {
namespace {

Real real_pi() {
  Real out;
  mpfr_const_pi(out.backend().data(), MPFR_RNDN);
  return out;
}

Real euler_gamma() {
  Real out;
  mpfr_const_euler(out.backend().data(), MPFR_RNDN);
  return out;
}

// Relative tolerance for limits that converge geometrically.
Real geometric_tolerance() {
  Real tol = pow2(8 - static_cast<long>(precision_bits()));
  return tol < Real(1e-25) ? tol : Real(1e-25);
}

Real rel_change(const Real& next, const Real& prev) {
  if (next == 0) return abs(prev);
  return abs((next - prev) / next);
}

constexpr int kMaxIterations = 20000;

}  // namespace

const char* to_string(Regime regime) {
  return regime == Regime::Exponential ? "exponential" : "double-exponential";
}

TauRho solve_tau_rho(const WeightFamily& family) {
  auto H = [&](const Real& t) { return t * family.phi(t, 1) - family.phi(t, 0); };
  auto dH = [&](const Real& t) { return t * family.phi(t, 2); };

  const double upper = std::min(family.radius() * (1 - 1e-6), 1e6);
  Real lo = 0;
  Real hi = 0;
  bool found = false;
  for (double t = std::min(upper, 1.0) / 1024;; t *= 1.5) {
    const bool last = t >= upper;
    Real x = last ? Real(upper) : Real(t);
    if (H(x) >= 0) {
      hi = x;
      found = true;
      break;
    }
    lo = x;
    if (last) break;
  }
  if (!found)
    throw Error(ErrorKind::NoTau, "t Phi'(t) - Phi(t) has no sign change below " + std::to_string(upper) +
                                      " for family " + family.name());

  // H is increasing and convex on [0, radius), so Newton from the right end
  // approaches the root monotonically; bisection covers rounding trouble.
  const Real eps = pow2(4 - static_cast<long>(precision_bits()));
  Real x = hi;
  for (int it = 0; it < kMaxIterations; ++it) {
    Real hx = H(x);
    if (hx == 0) {
      lo = hi = x;
      break;
    }
    if (hx > 0)
      hi = x;
    else
      lo = x;
    Real next = x - hx / dH(x);
    if (!(next > lo && next < hi)) next = (lo + hi) / 2;
    const Real step = abs(next - x);
    x = next;
    if (step <= eps * abs(x) || hi - lo <= eps * abs(x)) break;
  }
  return {x, x / family.phi(x, 0)};
}

namespace {

FamilyConstants common_constants(const WeightFamily& family) {
  FamilyConstants c;
  auto [tau, rho] = solve_tau_rho(family);
  c.tau = tau;
  c.rho = rho;
  c.phi_tau = family.phi(tau, 0);
  c.phi2_tau = family.phi(tau, 2);
  c.a = -sqrt(2 * c.phi_tau / c.phi2_tau);
  c.tau_error = abs(tau * family.phi(tau, 1) - c.phi_tau);
  c.mu = 0;
  c.zeta = 0;
  c.lambda2 = 0;
  c.lambda1_error = c.lambda2_error = c.mu_error = 0;
  return c;
}

}  // namespace

std::vector<Real> eta_sequence(const FamilyConstants& c, const WeightFamily& family, int kmax) {
  std::vector<Real> eta;
  eta.reserve(static_cast<std::size_t>(std::max(kmax, 0)) + 1);
  eta.push_back(c.tau);
  for (int k = 1; k <= kmax; ++k) eta.push_back(c.rho * family.phi_minus_one(eta.back()));
  return eta;
}

FamilyConstants constants_exponential(const WeightFamily& family) {
  if (family_structure(family).w1_zero)
    throw Error(ErrorKind::WrongRegime, family.name() + " has w_1 = 0 (double-exponential regime)");
  FamilyConstants c = common_constants(family);
  c.regime = Regime::Exponential;
  const Real phi1_0 = family.phi(Real(0), 1);
  c.zeta = c.rho * phi1_0;
  c.d = 1 / c.zeta;

  const Real tol = geometric_tolerance();
  Real eta = c.tau;
  Real zeta_k = 1;
  Real lambda1 = c.tau;
  Real lambda2 = 1;
  bool converged = false;
  for (int k = 1; k <= kMaxIterations; ++k) {
    eta = c.rho * family.phi_minus_one(eta);
    zeta_k *= c.zeta;
    const Real l1 = eta / zeta_k;
    const Real l2 = lambda2 * family.phi(eta, 1) / phi1_0;
    c.lambda1_error = rel_change(l1, lambda1);
    c.lambda2_error = rel_change(l2, lambda2);
    lambda1 = l1;
    lambda2 = l2;
    if (c.lambda1_error < tol && c.lambda2_error < tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw Error(ErrorKind::NoConvergence, "lambda_1 iteration did not stabilize");
  c.lambda1 = lambda1;
  c.lambda2 = lambda2;
  c.kappa = c.lambda1 * (1 - c.zeta) * c.zeta / c.tau;
  return c;
}

FamilyConstants constants_doubleexp(const WeightFamily& family) {
  const FamilyStructure st = family_structure(family);
  if (!st.w1_zero) throw Error(ErrorKind::WrongRegime, family.name() + " has w_1 != 0 (exponential regime)");
  FamilyConstants c = common_constants(family);
  c.regime = Regime::DoubleExponential;
  c.r = st.r;
  c.D = st.period;
  c.w_r = to_real(family.weight(static_cast<std::size_t>(st.r)));
  const Real r = c.r;
  c.lambda1 = pow(c.rho * c.w_r, Real(-1) / (r - 1));
  c.lambda1_error = 0;

  // log mu = log(eta_0 / lambda_1) + sum_j theta_j / r^{j+1}, where
  // theta_j = log(eta_{j+1} / lambda_1) - r log(eta_j / lambda_1).
  const Real tol = pow2(-static_cast<long>(precision_bits()));
  Real log_mu = log(c.tau / c.lambda1);
  Real eta = c.tau;
  Real scale = r;
  bool converged = false;
  for (int j = 0; j < kMaxIterations; ++j) {
    const Real shifted = family.phi_minus_one(eta);
    const Real theta = log(shifted / (c.w_r * pow(eta, r)));
    const Real term = theta / scale;
    log_mu += term;
    c.mu_error = abs(term);
    if ((abs(theta) > eta ? abs(theta) : eta) / scale < tol) {
      converged = true;
      break;
    }
    eta = c.rho * shifted;
    scale *= r;
  }
  if (!converged) throw Error(ErrorKind::NoConvergence, "mu series did not converge");
  c.mu = exp(log_mu);
  if (!(c.mu > 0 && c.mu < 1)) throw Error(ErrorKind::NoConvergence, "mu outside (0, 1): " + format_real(c.mu));
  c.mu_error *= c.mu;
  c.d = exp(-r * log_mu);
  c.kappa = c.w_r * pow(c.lambda1, r) / c.phi_tau;
  return c;
}

FamilyConstants compute_constants(const WeightFamily& family) {
  return family_structure(family).w1_zero ? constants_doubleexp(family) : constants_exponential(family);
}

Real cdf_asymptotic(const FamilyConstants& c, long n, int h) {
  const Real log_d = log(c.d);
  const Real exponent = c.regime == Regime::Exponential ? Real(h) : pow(Real(c.r), Real(h));
  return exp(-c.kappa * Real(n) * exp(-exponent * log_d));
}

std::complex<double> complex_gamma(std::complex<double> z) {
  static constexpr double kG = 7;
  static constexpr std::array<double, 9> kCoeff = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double pi = std::numbers::pi;
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * complex_gamma(1.0 - z));
  z -= 1.0;
  std::complex<double> x = kCoeff[0];
  for (std::size_t i = 1; i < kCoeff.size(); ++i) x += kCoeff[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + kG + 0.5;
  return std::sqrt(2 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

double psi_d(double d, double x, int kmax) {
  constexpr double pi = std::numbers::pi;
  const double L = std::log(d);
  x -= std::floor(x);
  double sum = 0;
  for (int k = 1; k <= kmax; ++k) {
    const double y = -2 * pi * k / L;
    // |Gamma(iy)|^2 = pi / (y sinh(pi y)); past this point the terms are below 1e-300
    if (pi * std::abs(y) > 700) break;
    const std::complex<double> g = complex_gamma({0.0, y});
    const std::complex<double> e = std::polar(1.0, 2 * pi * k * x);
    sum += 2 * (g * e).real();
  }
  return -sum / L;
}

Real expectation_asymptotic(const FamilyConstants& c, long n, int kmax) {
  if (c.regime != Regime::Exponential)
    throw Error(ErrorKind::WrongRegime, "the expectation formula needs the exponential regime");
  const Real L = log(c.d);
  const Real x = log(c.kappa * Real(n)) / L;
  const Real frac = x - floor(x);
  return log(Real(n)) / L + log(c.kappa) / L + euler_gamma() / L + Real(0.5) +
         Real(psi_d(to_double(c.d), to_double(frac), kmax));
}

namespace {

struct RhoHSystem {
  const WeightFamily& family;
  int h;

  // Unknowns (rho_h, eta_{h,0}, sigma) with sigma = s - 1.
  using Vec = std::array<Real, 3>;

  std::optional<Vec> residual(const Vec& u, std::vector<Real>* eta_out = nullptr) const {
    const Real& rho_h = u[0];
    const Real& sigma = u[2];
    const double radius = family.radius();
    std::vector<Real> eta(static_cast<std::size_t>(h) + 1);
    eta[0] = u[1];
    eta[1] = u[1] - rho_h;
    for (int k = 0; k <= h; ++k) {
      if (k >= 2) eta[k] = rho_h * (family.phi_minus_one(eta[k - 1]) - sigma);
      if (!isfinite(eta[k]) || abs(eta[k]) >= radius) return std::nullopt;
    }
    Vec r;
    r[0] = sigma - family.phi_minus_one(eta[h]);
    r[1] = eta[0] - rho_h * (family.phi(eta[0], 0) - sigma);
    Real tail = 1;
    Real sum = 0;
    for (int k = h; k >= 2; --k) {
      tail *= rho_h * family.phi(eta[k], 1);
      sum += tail;
    }
    const Real full = tail * rho_h * family.phi(eta[1], 1);
    r[2] = full + (1 - rho_h * family.phi(eta[0], 1)) * (1 + sum);
    for (const auto& v : r)
      if (!isfinite(v)) return std::nullopt;
    if (eta_out) *eta_out = std::move(eta);
    return r;
  }
};

Real max_norm(const RhoHSystem::Vec& v) {
  Real m = 0;
  for (const auto& x : v)
    if (abs(x) > m) m = abs(x);
  return m;
}

// Solves J x = b by Gaussian elimination with partial pivoting.
std::optional<RhoHSystem::Vec> solve3(std::array<RhoHSystem::Vec, 3> J, RhoHSystem::Vec b) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row)
      if (abs(J[row][col]) > abs(J[pivot][col])) pivot = row;
    if (J[pivot][col] == 0) return std::nullopt;
    std::swap(J[col], J[pivot]);
    std::swap(b[col], b[pivot]);
    for (int row = col + 1; row < 3; ++row) {
      const Real f = J[row][col] / J[col][col];
      for (int k = col; k < 3; ++k) J[row][k] -= f * J[col][k];
      b[row] -= f * b[col];
    }
  }
  RhoHSystem::Vec x;
  for (int row = 2; row >= 0; --row) {
    Real s = b[row];
    for (int k = row + 1; k < 3; ++k) s -= J[row][k] * x[k];
    x[row] = s / J[row][row];
  }
  return x;
}

}  // namespace

RhoHSolution solve_rho_h(const WeightFamily& family, int h, unsigned bits) {
  if (h < 2) throw Error(ErrorKind::InvalidArgument, "solve_rho_h needs h >= 2, got " + std::to_string(h));
  PrecisionGuard guard(bits);
  const auto [tau, rho] = solve_tau_rho(family);
  const RhoHSystem system{family, h};
  const Real step = pow2(-static_cast<long>(bits) / 3);
  const Real tolerance = pow2(-static_cast<long>(bits) / 2);

  RhoHSystem::Vec u = {rho, tau, Real(0)};
  auto r = system.residual(u);
  if (!r) throw Error(ErrorKind::NoConvergence, "initial guess outside the domain of Phi");
  Real norm = max_norm(*r);
  int polish = 0;
  for (int it = 1; it <= 200; ++it) {
    std::array<RhoHSystem::Vec, 3> J;
    for (int j = 0; j < 3; ++j) {
      RhoHSystem::Vec shifted = u;
      shifted[j] += step;
      auto rs = system.residual(shifted);
      if (!rs) {
        shifted[j] = u[j] - step;
        rs = system.residual(shifted);
        if (!rs) throw Error(ErrorKind::NoConvergence, "finite-difference step left the domain of Phi");
        for (int i = 0; i < 3; ++i) J[i][j] = ((*r)[i] - (*rs)[i]) / step;
      } else {
        for (int i = 0; i < 3; ++i) J[i][j] = ((*rs)[i] - (*r)[i]) / step;
      }
    }
    RhoHSystem::Vec rhs;
    for (int i = 0; i < 3; ++i) rhs[i] = -(*r)[i];
    auto du = solve3(J, rhs);
    if (!du) throw Error(ErrorKind::NoConvergence, "singular Jacobian at iteration " + std::to_string(it));

    Real damping = 1;
    bool accepted = false;
    for (int tries = 0; tries < 40; ++tries, damping /= 2) {
      RhoHSystem::Vec trial;
      for (int i = 0; i < 3; ++i) trial[i] = u[i] + damping * (*du)[i];
      auto rt = system.residual(trial);
      if (!rt) continue;
      const Real tn = max_norm(*rt);
      if (tn < norm || (norm < tolerance && tn <= norm)) {
        u = trial;
        r = rt;
        norm = tn;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (norm < tolerance) break;
      throw Error(ErrorKind::NoConvergence, "Newton stalled at residual " + format_real(norm, 6) + " for h = " +
                                                std::to_string(h));
    }
    if (norm < tolerance && ++polish >= 2) {
      RhoHSolution sol;
      sol.h = h;
      sol.rho_h = u[0];
      sol.s = 1 + u[2];
      system.residual(u, &sol.eta);
      sol.residuals.assign(r->begin(), r->end());
      sol.iterations = it;
      return sol;
    }
  }
  if (norm < tolerance) {
    RhoHSolution sol;
    sol.h = h;
    sol.rho_h = u[0];
    sol.s = 1 + u[2];
    system.residual(u, &sol.eta);
    sol.residuals.assign(r->begin(), r->end());
    sol.iterations = 200;
    return sol;
  }
  throw Error(ErrorKind::NoConvergence, "Newton did not converge for h = " + std::to_string(h) +
                                            "; last rho_h = " + format_real(u[0]) +
                                            ", residual " + format_real(norm, 6));
}

Real rho_h_leading_term(const FamilyConstants& c, int h) {
  if (c.regime == Regime::Exponential)
    return c.lambda1 * (1 - c.zeta) * pow(c.zeta, Real(h + 1)) / c.phi_tau;
  return c.rho * c.kappa * exp(pow(Real(c.r), Real(h + 1)) * log(c.mu));
}

Real count_asymptotic(const FamilyConstants& c, long n) {
  if (n < 1 || (n - 1) % c.D != 0)
    throw Error(ErrorKind::PeriodMismatch,
                "no trees of size " + std::to_string(n) + " (period " + std::to_string(c.D) + ")");
  const Real nn = n;
  return -c.a / (2 * sqrt(real_pi())) * pow(nn, Real(-1.5)) * exp(-nn * log(c.rho)) * c.D;
}

int two_point_round(const Real& m) {
  const Real fl = floor(m);
  const Real frac = m - fl;
  return static_cast<int>(frac <= Real(0.5) ? fl : fl + 1);
}

TwoPoint two_point_predictor(const FamilyConstants& c, long n) {
  if (c.regime != Regime::DoubleExponential)
    throw Error(ErrorKind::WrongRegime, "the two-point law needs the double-exponential regime");
  const Real log_d_n = log(Real(n)) / log(c.d);
  if (!(log_d_n > 1))
    throw Error(ErrorKind::InvalidArgument, "two_point_predictor needs log_d n > 1, got n = " + std::to_string(n));
  TwoPoint out;
  out.m_n = log(log_d_n) / log(Real(c.r));
  out.h_n = two_point_round(out.m_n);
  return out;
}

}  // namespace protek
