#include "fdp/support/mpfloat.hpp"

namespace fdp::support {

MpFloat MpFloat::pi() {
  MpFloat r;
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

MpFloat MpFloat::exp(const MpFloat& x) {
  MpFloat r;
  mpfr_exp(r.v_, x.v_, MPFR_RNDN);
  return r;
}

MpFloat MpFloat::sin(const MpFloat& x) {
  MpFloat r;
  mpfr_sin(r.v_, x.v_, MPFR_RNDN);
  return r;
}

MpFloat MpFloat::sqrt(const MpFloat& x) {
  MpFloat r;
  mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
  return r;
}

MpFloat MpFloat::pow_si(const MpFloat& x, long e) {
  MpFloat r;
  mpfr_pow_si(r.v_, x.v_, e, MPFR_RNDN);
  return r;
}

MpFloat MpFloat::operator+(const MpFloat& o) const {
  MpFloat r;
  mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
  return r;
}

MpFloat MpFloat::operator-(const MpFloat& o) const {
  MpFloat r;
  mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
  return r;
}

MpFloat MpFloat::operator*(const MpFloat& o) const {
  MpFloat r;
  mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
  return r;
}

MpFloat MpFloat::operator/(const MpFloat& o) const {
  MpFloat r;
  mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
  return r;
}

MpFloat MpFloat::operator-() const {
  MpFloat r;
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

MpFloat MpFloat::abs() const {
  MpFloat r;
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string MpFloat::str(int digits) const {
  char buf[256];
  mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
  return std::string(buf);
}

} // namespace fdp::support
