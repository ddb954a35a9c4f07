#pragma once

#include "fdp/exactnum/rational.hpp"

namespace fdp::exactnum {

// Closed rational interval [lo, hi], lo <= hi. Used for rigorous enclosures
// of transcendental constants; all endpoints are exact rationals.
struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval() = default;
  RationalInterval(Rational l, Rational h);

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }

  RationalInterval operator+(const RationalInterval& o) const;
  RationalInterval operator-(const RationalInterval& o) const;
  RationalInterval operator*(const RationalInterval& o) const;
  RationalInterval operator*(const Rational& s) const;
  RationalInterval operator+(const Rational& s) const { return {lo + s, hi + s}; }
  // integer power, exact interval extension
  RationalInterval pow(long e) const;
  // reciprocal; requires 0 not in the interval
  RationalInterval inv() const;
};

// (floor(pi*10^m)/10^m, ceil(pi*10^m)/10^m): width exactly 10^-m, computed
// from a Machin-type arctangent formula with explicit alternating-series
// remainders. No floating point anywhere on this path.
RationalInterval pi_bounds(int digits);

// Enclosure of e^u of width <= 10^-digits for rational u, |u| <= 64.
RationalInterval exp_enclosure(const Rational& u, int digits);

// (floor(e^-pi*10^m)/10^m, ceil(e^-pi*10^m)/10^m), width exactly 10^-m.
RationalInterval exp_neg_pi_bounds(int digits);

// Per-dimension precision schedule for the positivity conditions. Escalation
// advances each field to the next larger menu entry (fields saturate
// independently).
struct PrecisionLadder {
  int pi_digits = 20;     // from {20, 40, 60, 80, 100}
  int gamma_digits = 2;   // from {2, 5, 8, 11}
  int split_exponent = 4; // from {4, 3, 2, 1, 0}

  bool is_max() const;
  PrecisionLadder next() const; // raises resource error when already at max
  std::string str() const;
};

} // namespace fdp::exactnum
