#include "fdp/exactnum/enclosure.hpp"

#include <algorithm>
#include <sstream>

#include "fdp/support/error.hpp"

namespace fdp::exactnum {

RationalInterval::RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) raise(ErrorKind::internal, "interval with lo > hi");
}

RationalInterval RationalInterval::operator+(const RationalInterval& o) const {
  return {lo + o.lo, hi + o.hi};
}

RationalInterval RationalInterval::operator-(const RationalInterval& o) const {
  return {lo - o.hi, hi - o.lo};
}

RationalInterval RationalInterval::operator*(const RationalInterval& o) const {
  Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
}

RationalInterval RationalInterval::operator*(const Rational& s) const {
  if (s >= 0) return {lo * s, hi * s};
  return {hi * s, lo * s};
}

RationalInterval RationalInterval::pow(long e) const {
  if (e < 0) return pow(-e).inv();
  RationalInterval acc(Rational(1), Rational(1));
  for (long i = 0; i < e; ++i) acc = acc * *this;
  // exact for e==0/1; for even powers of sign-crossing intervals this is a
  // sound (if not minimal) enclosure, which is all the callers need
  return acc;
}

RationalInterval RationalInterval::inv() const {
  if (lo <= 0 && hi >= 0) raise(ErrorKind::domain, "interval reciprocal across zero");
  return {1 / hi, 1 / lo};
}

namespace {

// Enclosure of arctan(1/x) for integer x >= 2 from the alternating series
// sum (-1)^k / ((2k+1) x^(2k+1)); truncation error is bounded by the first
// omitted term, so consecutive partial sums bracket the value.
RationalInterval arctan_inv(long x, const Rational& tol) {
  Rational term(1, x);
  Rational x2 = Rational(1, x) * Rational(1, x);
  Rational sum(0);
  long k = 0;
  for (;;) {
    Rational contrib = term / Rational(2 * k + 1);
    Rational next_sum = sum;
    if (k % 2 == 0) next_sum += contrib;
    else next_sum -= contrib;
    term *= x2;
    Rational next_contrib = term / Rational(2 * k + 3);
    if (next_contrib < tol) {
      // alternating: the value lies between next_sum and next_sum -/+ next term
      if (k % 2 == 0) return {next_sum - next_contrib, next_sum};
      return {next_sum, next_sum + next_contrib};
    }
    sum = next_sum;
    ++k;
  }
}

Rational pow10(int m) {
  Rational r(1);
  for (int i = 0; i < m; ++i) r *= 10;
  return r;
}

// Tight enclosure of pi via Machin: pi = 16 atan(1/5) - 4 atan(1/239).
RationalInterval pi_enclosure(const Rational& tol) {
  RationalInterval a5 = arctan_inv(5, tol / 64);
  RationalInterval a239 = arctan_inv(239, tol / 16);
  return a5 * Rational(16) - a239 * Rational(4);
}

RationalInterval decimal_bracket(const RationalInterval& v, int digits) {
  Rational scale = pow10(digits);
  Int lo_fl = floor_rational(v.lo * scale);
  Int hi_ce = ceil_rational(v.hi * scale);
  return {make_rational(lo_fl, scale.get_num()), make_rational(hi_ce, scale.get_num())};
}

} // namespace

RationalInterval pi_bounds(int digits) {
  if (digits < 1) raise(ErrorKind::domain, "pi_bounds: digits must be >= 1");
  // request enough interior precision that floor/ceil land on adjacent
  // decimals (pi is irrational, so ties cannot occur)
  for (int extra = 4;; extra += 8) {
    Rational tol = 1 / pow10(digits + extra);
    RationalInterval v = pi_enclosure(tol);
    RationalInterval br = decimal_bracket(v, digits);
    if (br.width() * pow10(digits) == 1) return br;
  }
}

namespace {

// e^u for u in [0, 1): Taylor series with geometric remainder bound.
RationalInterval exp_unit(const Rational& u, const Rational& tol) {
  Rational term(1), sum(1);
  long k = 1;
  for (;;) {
    term = term * u / Rational(k);
    sum += term;
    // tail <= term * u / (k+1) / (1 - u/(k+2)) <= term once u < 1, k >= 1
    Rational tail_bound = term * u / Rational(k + 1) * 2;
    if (tail_bound < tol) return {sum, sum + tail_bound};
    ++k;
  }
}

} // namespace

RationalInterval exp_enclosure(const Rational& u, int digits) {
  if (digits < 1) raise(ErrorKind::domain, "exp_enclosure: digits must be >= 1");
  if (abs(u) > 64) raise(ErrorKind::resource, "exp_enclosure: |u| exceeds cap 64");
  if (u < 0) {
    // e^u = 1/e^-u with e^-u >= 1, so the reciprocal does not widen
    Rational au = -u;
    for (int extra = digits + 2;; extra += 8) {
      RationalInterval r = exp_enclosure(au, extra).inv();
      if (r.width() <= 1 / pow10(digits)) return r;
    }
  }
  // u >= 0: argument reduction e^u = (e^(u/2^s))^(2^s) with u/2^s < 1
  long s = 0;
  Rational v = u;
  while (v >= 1) {
    v /= 2;
    ++s;
  }
  // relative error multiplies ~2^s times; absolute target on the reduced leg
  Rational tol = 1 / pow10(digits + 2 + 2 * (int)s + (int)(u.get_d() / 2) + 28);
  RationalInterval base = exp_unit(v, tol);
  RationalInterval acc = base;
  for (long i = 0; i < s; ++i) acc = acc * acc;
  if (acc.width() > 1 / pow10(digits)) {
    // rare: retry with a finer tolerance
    return exp_enclosure(u, digits + 4);
  }
  return acc;
}

RationalInterval exp_neg_pi_bounds(int digits) {
  if (digits < 1) raise(ErrorKind::domain, "exp_neg_pi_bounds: digits must be >= 1");
  for (int extra = 6;; extra += 8) {
    RationalInterval pi = pi_bounds(digits + extra);
    // e^-pi in [e^-pi.hi, e^-pi.lo]
    RationalInterval a = exp_enclosure(-pi.hi, digits + extra);
    RationalInterval b = exp_enclosure(-pi.lo, digits + extra);
    RationalInterval v(a.lo, b.hi);
    RationalInterval br = decimal_bracket(v, digits);
    if (br.width() * pow10(digits) == 1) return br;
  }
}

bool PrecisionLadder::is_max() const {
  return pi_digits >= 100 && gamma_digits >= 11 && split_exponent <= 0;
}

PrecisionLadder PrecisionLadder::next() const {
  if (is_max()) raise(ErrorKind::resource, "precision ladder exhausted");
  PrecisionLadder n = *this;
  if (n.pi_digits < 100) n.pi_digits += 20;
  if (n.gamma_digits < 11) n.gamma_digits += 3;
  if (n.split_exponent > 0) n.split_exponent -= 1;
  return n;
}

std::string PrecisionLadder::str() const {
  std::ostringstream os;
  os << "(pi=" << pi_digits << ", gamma=" << gamma_digits << ", split=" << split_exponent << ")";
  return os.str();
}

} // namespace fdp::exactnum
