#pragma once

#include <mpfr.h>

#include <string>

#include "fdp/exactnum/rational.hpp"

namespace fdp::support {

// Minimal RAII wrapper over mpfr_t for the non-certified "float mode"
// evaluations (plots, c_d estimation, Poisson residuals). Default precision
// is ~77 decimal digits.
class MpFloat {
 public:
  static constexpr mpfr_prec_t kDefaultPrec = 256;

  MpFloat() { mpfr_init2(v_, kDefaultPrec); mpfr_set_zero(v_, 1); }
  explicit MpFloat(double x) : MpFloat() { mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit MpFloat(long x) : MpFloat() { mpfr_set_si(v_, x, MPFR_RNDN); }
  explicit MpFloat(const exactnum::Rational& r) : MpFloat() {
    mpfr_set_q(v_, r.get_mpq_t(), MPFR_RNDN);
  }
  MpFloat(const MpFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  MpFloat(MpFloat&& o) noexcept { mpfr_init2(v_, kDefaultPrec); mpfr_swap(v_, o.v_); }
  MpFloat& operator=(MpFloat o) { mpfr_swap(v_, o.v_); return *this; }
  ~MpFloat() { mpfr_clear(v_); }

  static MpFloat pi();
  static MpFloat exp(const MpFloat& x);
  static MpFloat sin(const MpFloat& x);
  static MpFloat sqrt(const MpFloat& x);
  static MpFloat pow_si(const MpFloat& x, long e);

  MpFloat operator+(const MpFloat& o) const;
  MpFloat operator-(const MpFloat& o) const;
  MpFloat operator*(const MpFloat& o) const;
  MpFloat operator/(const MpFloat& o) const;
  MpFloat operator-() const;

  int sign() const { return mpfr_sgn(v_); }
  bool operator<(const MpFloat& o) const { return mpfr_cmp(v_, o.v_) < 0; }
  bool operator>(const MpFloat& o) const { return mpfr_cmp(v_, o.v_) > 0; }

  MpFloat abs() const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string str(int digits = 20) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

} // namespace fdp::support
