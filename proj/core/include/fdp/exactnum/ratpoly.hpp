#pragma once

#include <vector>

#include "fdp/exactnum/rational.hpp"

namespace fdp::exactnum {

// Dense univariate polynomial over Rational, indexed by degree.
// Invariant: leading coefficient nonzero unless the polynomial is zero
// (zero polynomial is an empty coefficient vector).
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static RatPoly constant(const Rational& v);
  // x^k with coefficient v
  static RatPoly monomial(const Rational& v, size_t k);

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is -1
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const Rational& leading() const;

  RatPoly operator-() const;
  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly operator*(const Rational& s) const;
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

  Rational eval(const Rational& x) const;
  RatPoly derivative() const;

  // Quotient and remainder of exact polynomial division over the rationals.
  static void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
  // Exact division; raises internal error on a nonzero remainder.
  RatPoly divexact(const RatPoly& b) const;

  // Monic gcd over the rationals.
  static RatPoly gcd(const RatPoly& a, const RatPoly& b);

  // p(x) -> p(x + a)
  RatPoly taylor_shift(const Rational& a) const;
  // p(x) -> p(s*x)
  RatPoly scale_arg(const Rational& s) const;
  // x^deg * p(1/x)
  RatPoly reverse() const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Integer polynomial with content stripped; the workhorse for root counting.
struct IntPoly {
  std::vector<Int> c; // dense, trimmed

  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  void trim();
  // divide by integer content (gcd of coefficients), keeping the sign
  void make_primitive();
  int sign_at(const Rational& x) const;
  int sign_at_int(const Int& x) const;
};

// Clears denominators and strips content; sign of values on (0,inf) preserved.
IntPoly to_primitive_int(const RatPoly& p);

} // namespace fdp::exactnum
