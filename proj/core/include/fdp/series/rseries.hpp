#pragma once

#include <vector>

#include "fdp/exactnum/ratpoly.hpp"
#include "fdp/exactnum/rational.hpp"

namespace fdp::series {

using exactnum::RatPoly;
using exactnum::Rational;

// c0 + c1*w + c2*w^2. Nothing in the pipeline ever needs w-degree above 2;
// multiplication enforces that as a hard contract.
struct WPoly {
  Rational c0, c1, c2;

  WPoly() : c0(0), c1(0), c2(0) {}
  explicit WPoly(Rational a) : c0(std::move(a)), c1(0), c2(0) {}
  WPoly(Rational a, Rational b, Rational c)
      : c0(std::move(a)), c1(std::move(b)), c2(std::move(c)) {}

  bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }
  int degree() const { return c2 != 0 ? 2 : (c1 != 0 ? 1 : (c0 != 0 ? 0 : -1)); }
  const Rational& coeff(int wpow) const;

  WPoly operator+(const WPoly& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
  WPoly operator-(const WPoly& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
  WPoly operator-() const { return {-c0, -c1, -c2}; }
  WPoly operator*(const Rational& s) const { return {c0 * s, c1 * s, c2 * s}; }
  // raises on w-degree overflow (the pipeline never exceeds degree 2)
  WPoly operator*(const WPoly& o) const;
  bool operator==(const WPoly& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }
};

// Truncated Laurent expansion in r with WPoly coefficients:
//   sum_{n=start}^{order} a_n(w) r^n,  terms beyond `order` unknown.
// Truncation is tracked pessimistically; reading a coefficient outside
// [start, order] is an error, never a silent zero.
class RSeries {
 public:
  RSeries() : start_(0), order_(-1) {}
  RSeries(long start, long order); // zero-filled
  static RSeries zero(long order) { return RSeries(0, order); }
  static RSeries constant(const Rational& v, long order);
  static RSeries monomial(const WPoly& c, long n, long order);

  long start() const { return start_; }
  long order() const { return order_; }
  bool known(long n) const { return n >= start_ && n <= order_; }

  const WPoly& at(long n) const;     // checked read
  void set(long n, WPoly v);         // checked write
  void add_to(long n, const WPoly& v);

  RSeries operator+(const RSeries& o) const;
  RSeries operator-(const RSeries& o) const;
  RSeries operator-() const;
  RSeries operator*(const Rational& s) const;
  RSeries operator*(const RSeries& o) const; // sound truncation, w-degrees add

  // restrict the guaranteed order (m <= order)
  RSeries truncated(long m) const;
  // multiply by r^k (shifts start and order)
  RSeries shifted(long k) const;

  // reciprocal by recurrence; requires the lowest coefficient to be a
  // nonzero w-free unit. Result starts at -start() with relative precision
  // preserved.
  RSeries inverse() const;
  // a^e for integer e (negative allowed when invertible)
  RSeries power(long e) const;

  // exact coefficient of w^wpow r^n; out-of-truncation access raises
  const Rational& coeff(int wpow, long n) const;
  // structural zero below start, checked value otherwise
  WPoly at_or_zero(long n) const;

  // true if every known coefficient at odd r-exponent is zero (q-series)
  bool is_q_series() const;
  // true if every known coefficient is w-free
  bool is_w_free() const;

  // the w^wpow component as a polynomial in r (requires start >= 0)
  RatPoly w_component_poly(int wpow) const;

 private:
  long start_;
  long order_;
  std::vector<WPoly> c_; // index n - start_
};

// Reciprocal of a series by the convolution recurrence, as an independent
// route for cross-checks.
RSeries inverse_by_recurrence(const RSeries& a);

// a^(-n) for n = -exponent/2... see magic pipeline; here: plain a^(-n),
// n >= 0, via inverse + powering.
RSeries series_inv_pow(const RSeries& a, long n);

} // namespace fdp::series
