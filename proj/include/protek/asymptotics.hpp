#pragma once

#include <complex>
#include <vector>

#include "protek/family.hpp"
#include "protek/real.hpp"

namespace protek {

enum class Regime { Exponential, DoubleExponential };

const char* to_string(Regime regime);

struct TauRho {
  Real tau;
  Real rho;
};

/// tau solves t Phi'(t) = Phi(t) in (0, radius); rho = tau / Phi(tau).
/// Throws Error(NoTau) if no root is found below min(radius (1 - 1e-6), 1e6).
TauRho solve_tau_rho(const WeightFamily& family);

/// Constants of the limiting distribution. Fields that belong to the other
/// regime are left at zero (zeta, lambda2) or at their trivial value (r = 1,
/// D = 1, mu = 0). Error estimates are the last change of the respective
/// iteration.
struct FamilyConstants {
  Regime regime = Regime::Exponential;
  Real tau, rho;
  Real phi_tau, phi2_tau;
  /// Coefficient of sqrt(1 - x/rho) in the singular expansion of Y at rho.
  Real a;

  Real zeta;
  Real lambda1, lambda2;
  Real kappa;
  Real d;

  int r = 1;
  int D = 1;
  Real mu;
  Real w_r;

  Real tau_error, lambda1_error, lambda2_error, mu_error;
};

/// eta_0 = tau, eta_k = rho (Phi(eta_{k-1}) - 1), k = 0..kmax.
std::vector<Real> eta_sequence(const FamilyConstants& c, const WeightFamily& family, int kmax);

/// Requires w_1 != 0, else Error(WrongRegime).
FamilyConstants constants_exponential(const WeightFamily& family);

/// Requires w_1 = 0, else Error(WrongRegime).
FamilyConstants constants_doubleexp(const WeightFamily& family);

FamilyConstants compute_constants(const WeightFamily& family);

/// exp(-kappa n d^{-h}), or exp(-kappa n d^{-r^h}) in the double-exponential regime.
Real cdf_asymptotic(const FamilyConstants& c, long n, int h);

/// Gamma(z) for complex z, Lanczos (g = 7) with reflection for Re z < 1/2.
std::complex<double> complex_gamma(std::complex<double> z);

/// Periodic fluctuation -(1/log d) sum_{k != 0} Gamma(-2k pi i / log d) e^{2k pi i x}, |k| <= kmax.
double psi_d(double d, double x, int kmax = 10);

/// log_d n + log_d kappa + gamma / log d + 1/2 + psi_d(log_d(kappa n)).
/// Exponential regime only, else Error(WrongRegime).
Real expectation_asymptotic(const FamilyConstants& c, long n, int kmax = 10);

/// Singularity of Y_{h,0}, together with eta_{h,k} = Y_{h,k}(rho_h) and
/// s = Phi(eta_{h,h}).
struct RhoHSolution {
  int h = 0;
  Real rho_h;
  std::vector<Real> eta;
  Real s;
  /// Residuals of the three equations at the returned point.
  std::vector<Real> residuals;
  int iterations = 0;
};

/// Newton solve at the given precision (bits). Values in the result carry
/// that precision. Throws Error(InvalidArgument) for h < 2 and
/// Error(NoConvergence) if Newton fails.
RhoHSolution solve_rho_h(const WeightFamily& family, int h, unsigned precision_bits);

/// Leading term of rho_h - rho: lambda1 (1 - zeta) zeta^{h+1} / Phi(tau) in
/// the exponential regime, rho kappa mu^{r^{h+1}} otherwise.
Real rho_h_leading_term(const FamilyConstants& c, int h);

/// (-a / (2 sqrt(pi))) n^{-3/2} rho^{-n}, times D. Throws
/// Error(PeriodMismatch) unless n = 1 mod D.
Real count_asymptotic(const FamilyConstants& c, long n);

struct TwoPoint {
  int h_n = 0;
  Real m_n;
};

/// Rounding rule of the two-point law: floor(m) if frac(m) <= 1/2, else ceil(m).
int two_point_round(const Real& m);

/// m_n = log_r log_d n. Double-exponential regime only, else
/// Error(WrongRegime); requires log_d n > 1.
TwoPoint two_point_predictor(const FamilyConstants& c, long n);

}  // namespace protek
