#include "protek/real.hpp"

#include <mpfr.h>

#include <cmath>
#include <cstdlib>

namespace protek {
namespace {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

}  // namespace

unsigned precision_bits() {
  Real probe;
  return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_digits10_); }

Real to_real(const Rational& value) {
  Real out;
  mpfr_set_q(out.backend().data(), value.get_mpq_t(), MPFR_RNDN);
  return out;
}

Real pow2(long exponent) {
  Real out;
  mpfr_set_ui_2exp(out.backend().data(), 1, exponent, MPFR_RNDN);
  return out;
}

std::string format_real(const Real& value, int significant_digits) {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rg", significant_digits, value.backend().data());
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

double to_double(const Real& value) { return mpfr_get_d(value.backend().data(), MPFR_RNDN); }

}  // namespace protek

namespace protek {
namespace {

class ScratchMpfr {
 public:
  explicit ScratchMpfr(const Rational& value) {
    mpfr_init2(data_, 256);
    mpfr_set_q(data_, value.get_mpq_t(), MPFR_RNDN);
  }
  ~ScratchMpfr() { mpfr_clear(data_); }
  ScratchMpfr(const ScratchMpfr&) = delete;
  ScratchMpfr& operator=(const ScratchMpfr&) = delete;
  mpfr_srcptr get() const { return data_; }

 private:
  mpfr_t data_;
};

}  // namespace

double rational_to_double(const Rational& value) {
  mpfr_t exact;
  mpfr_init2(exact, 53);
  mpfr_set_q(exact, value.get_mpq_t(), MPFR_RNDN);
  const double out = mpfr_get_d(exact, MPFR_RNDN);
  mpfr_clear(exact);
  return out;
}

std::string format_rational(const Rational& value, int significant_digits) {
  ScratchMpfr scratch(value);
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rg", significant_digits, scratch.get());
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

}  // namespace protek
