#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace fdp::exactnum {

// Exact arbitrary-precision integers and rationals. mpq_class keeps values
// canonical (gcd(|num|, den) = 1, den > 0), which is exactly the Rational
// invariant; every operation in this library is exact, no rounding anywhere.
using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Int& num, const Int& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "a", "-a/b" or a plain decimal like "1.5880" into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

// Decimal rendering with `digits` fractional digits, truncated toward zero.
std::string to_decimal_string(const Rational& r, int digits);

Int pow_int(const Int& base, unsigned long e);
Rational pow_rational(const Rational& base, long e);

inline int sign(const Rational& r) { return sgn(r); }
inline int sign(const Int& z) { return sgn(z); }

Int floor_div(const Int& a, const Int& b); // floor(a/b), b > 0
Int floor_rational(const Rational& r);
Int ceil_rational(const Rational& r);

// gcd of |a| and |b|; gcd(0,0) = 0.
Int gcd_int(const Int& a, const Int& b);
Int lcm_int(const Int& a, const Int& b);

} // namespace fdp::exactnum
