#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fdp/exactnum/enclosure.hpp"
#include "fdp/exactnum/sturm.hpp"
#include "fdp/support/error.hpp"
#include "fdp/support/mpfloat.hpp"
#include "oracles.hpp"

using namespace fdp::exactnum;
using fdp::Error;
using fdp::support::MpFloat;

namespace {

RatPoly poly(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long x : coeffs) c.emplace_back(x);
  return RatPoly(std::move(c));
}

RatPoly random_int_poly(std::mt19937_64& rng, int deg, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  std::vector<Rational> c(deg + 1);
  for (auto& x : c) x = Rational(dist(rng));
  if (c.back() == 0) c.back() = 1;
  return RatPoly(std::move(c));
}

} // namespace

TEST_CASE("rational parsing and rendering") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("1.5880") == Rational(397, 250));
  CHECK(parse_rational(" 22 / 7 ") == Rational(22, 7));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK(to_decimal_string(Rational(397, 250), 4) == "1.5880");
  CHECK(to_decimal_string(Rational(-1, 3), 5) == "-0.33333");
}

TEST_CASE("rational ring axioms on random values") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> dist(-50, 50);
  for (int i = 0; i < 300; ++i) {
    Rational a = make_rational(dist(rng), std::abs(dist(rng)) + 1);
    Rational b = make_rational(dist(rng), std::abs(dist(rng)) + 1);
    Rational c = make_rational(dist(rng), std::abs(dist(rng)) + 1);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b - b == a); // exact cancellation
  }
}

TEST_CASE("polynomial arithmetic and division") {
  RatPoly p = poly({-1, 0, 1}); // x^2 - 1
  RatPoly f1 = poly({1, 1}), f2 = poly({-1, 1});
  CHECK(f1 * f2 == p);
  RatPoly q, r;
  RatPoly::divmod(p, f1, q, r);
  CHECK(q == f2);
  CHECK(r.is_zero());
  CHECK(RatPoly::gcd(p, f1 * poly({3, 5})) == f1);
  CHECK(p.taylor_shift(Rational(1)).eval(Rational(0)) == p.eval(Rational(1)));
  CHECK(p.eval(Rational(3, 2)) == Rational(5, 4));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 60; ++i) {
    RatPoly a = random_int_poly(rng, 4, -9, 9);
    RatPoly b = random_int_poly(rng, 3, -9, 9);
    RatPoly c = random_int_poly(rng, 5, -9, 9);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("sturm root counting on the stated examples") {
  CHECK(sturm_count_roots(poly({-2, 0, 1}), Rational(1), Rational(2)) == 1);
  CHECK(sturm_count_roots(poly({1, 0, 1}), Rational(-10), Rational(10)) == 0);
  CHECK_THROWS_AS(sturm_count_roots(poly({0, 1}), Rational(0), Rational(1)), Error);

  // random degree-6 polynomial against the sign-scan oracle at step 1e-4
  std::mt19937_64 rng(101);
  RatPoly p = random_int_poly(rng, 6, -20, 20);
  int expect = oracles::scan_count_roots(p, Rational(-5), Rational(5), Rational(1, 10000));
  CHECK(sturm_count_roots(p, Rational(-5), Rational(5)) == expect);
}

TEST_CASE("sturm vs scan oracle on random squarefree polynomials") {
  std::mt19937_64 rng(2024);
  int tested = 0;
  while (tested < 150) {
    std::uniform_int_distribution<int> dd(1, 8);
    RatPoly p = random_int_poly(rng, dd(rng), -20, 20);
    if (RatPoly::gcd(p, p.derivative()).degree() > 0) continue;
    if (p.eval(Rational(-5)) == 0 || p.eval(Rational(5)) == 0) continue;
    int expect = oracles::scan_count_roots(p, Rational(-5), Rational(5), Rational(1, 100));
    CHECK(sturm_count_roots(p, Rational(-5), Rational(5)) == expect);
    CHECK(descartes_count_roots(p, Rational(-5), Rational(5)) == expect);
    ++tested;
  }
}

TEST_CASE("poly_positive_on") {
  // (x-1)^2 + 3 > 0 on (0,5)
  CHECK(poly_positive_on(poly({4, -2, 1}), Rational(0), Rational(5)));
  // x - 1 changes sign at 1
  CHECK_FALSE(poly_positive_on(poly({-1, 1}), Rational(0), Rational(2)));
  // x^2 (x-3)^2 + 1/10 > 0 on (0,4), minimum 1/10 at the double roots
  RatPoly xx = poly({0, 0, 1});
  RatPoly x3 = poly({9, -6, 1});
  RatPoly p = xx * x3 + RatPoly::constant(Rational(1, 10));
  CHECK(poly_positive_on(p, Rational(0), Rational(4)));
  Rational gm = oracles::grid_min(p, Rational(0), Rational(4), 400);
  CHECK(gm > 0);
  CHECK(gm < Rational(1, 5)); // the grid sees the 1/10 dip

  // endpoint roots are divided out with sign bookkeeping
  CHECK(poly_positive_on(poly({0, 2, -1}), Rational(0), Rational(2)));  // x(2-x)
  CHECK_FALSE(poly_positive_on(poly({0, -2, 1}), Rational(0), Rational(2))); // x(x-2)
  // interior double root touches zero: not strictly positive
  RatPoly touch = poly({0, 1}) * poly({-1, 1}) * poly({-1, 1});
  CHECK_FALSE(poly_positive_on(-touch * poly({-2, 1}), Rational(0), Rational(2)));
}

TEST_CASE("poly_positive_on agrees across both engines") {
  std::mt19937_64 rng(5);
  PositivityOptions sturm_only;
  sturm_only.sturm_degree_cutoff = 1000;
  PositivityOptions descartes_only;
  descartes_only.sturm_degree_cutoff = 0;
  for (int i = 0; i < 60; ++i) {
    RatPoly p = random_int_poly(rng, 7, -10, 10);
    if (p.eval(Rational(0)) == 0 || p.eval(Rational(3)) == 0) continue;
    bool a = poly_positive_on(p, Rational(0), Rational(3), sturm_only);
    bool b = poly_positive_on(p, Rational(0), Rational(3), descartes_only);
    CHECK(a == b);
  }
}

TEST_CASE("pi bounds") {
  RationalInterval p2 = pi_bounds(2);
  CHECK(p2.lo == make_rational(314, 100));
  CHECK(p2.hi == make_rational(315, 100));
  MpFloat pi_ref = MpFloat::pi();
  for (int m : {1, 2, 5, 10, 20, 40}) {
    RationalInterval iv = pi_bounds(m);
    CHECK(iv.width() == pow_rational(Rational(1, 10), m));
    CHECK(MpFloat(iv.lo) < pi_ref);
    CHECK(pi_ref < MpFloat(iv.hi));
  }
  // monotone refinement: each level nests in the previous one
  for (int m = 1; m < 8; ++m) CHECK(pi_bounds(m).contains(pi_bounds(m + 1)));
}

TEST_CASE("exp enclosures") {
  RationalInterval one = exp_enclosure(Rational(0), 10);
  CHECK(one.contains(Rational(1)));
  CHECK(one.width() <= Rational(1, 1000000000));

  MpFloat e_inv = MpFloat(1L) / MpFloat::exp(MpFloat(1L));
  RationalInterval em1 = exp_enclosure(Rational(-1), 12);
  CHECK(MpFloat(em1.lo) < e_inv);
  CHECK(e_inv < MpFloat(em1.hi));

  // additivity up to widening
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> dist(-6, 6);
  for (int i = 0; i < 20; ++i) {
    Rational a = make_rational(dist(rng), 2), b = make_rational(dist(rng), 3);
    RationalInterval ea = exp_enclosure(a, 15), eb = exp_enclosure(b, 15);
    RationalInterval prod = ea * eb;
    RationalInterval eab = exp_enclosure(a + b, 15);
    CHECK(prod.hi >= eab.lo);
    CHECK(prod.lo <= eab.hi);
  }
  CHECK_THROWS_AS(exp_enclosure(Rational(100), 5), Error);
}

TEST_CASE("exp(-pi) bounds") {
  RationalInterval g2 = exp_neg_pi_bounds(2);
  CHECK(g2.lo == make_rational(4, 100));
  CHECK(g2.hi == make_rational(5, 100));
  MpFloat ref = MpFloat::exp(-MpFloat::pi());
  for (int m : {2, 5, 8, 11}) {
    RationalInterval iv = exp_neg_pi_bounds(m);
    CHECK(iv.width() == pow_rational(Rational(1, 10), m));
    CHECK(MpFloat(iv.lo) < ref);
    CHECK(ref < MpFloat(iv.hi));
  }
  // reciprocal identity: gamma_1 e^(pi upper) <= 1 <= gamma_2 e^(pi lower)
  RationalInterval pi20 = pi_bounds(20);
  RationalInterval upper = exp_enclosure(pi20.hi, 25);
  RationalInterval lower = exp_enclosure(pi20.lo, 25);
  CHECK(g2.lo * upper.hi <= 1);
  CHECK(g2.hi * lower.lo >= 1);
}

TEST_CASE("precision ladder menus") {
  PrecisionLadder lad;
  CHECK(lad.pi_digits == 20);
  CHECK(lad.gamma_digits == 2);
  CHECK(lad.split_exponent == 4);
  int steps = 0;
  while (!lad.is_max()) {
    lad = lad.next();
    ++steps;
  }
  CHECK(lad.pi_digits == 100);
  CHECK(lad.gamma_digits == 11);
  CHECK(lad.split_exponent == 0);
  CHECK(steps == 4);
  CHECK_THROWS_AS(lad.next(), Error);
}
