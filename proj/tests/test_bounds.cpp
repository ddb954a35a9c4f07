#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fdp/bounds/bounds.hpp"
#include "fdp/magic/pipeline.hpp"
#include "fdp/support/error.hpp"

using namespace fdp::bounds;
using fdp::Error;
using fdp::exactnum::Int;
using fdp::exactnum::Rational;
using fdp::support::MpFloat;

namespace {

Int factorial(long n) {
  Int f = 1;
  for (long k = 2; k <= n; ++k) f *= k;
  return f;
}

fdp::magic::Evaluator make_evaluator(long d) {
  auto p = fdp::magic::compute_params(d);
  auto phib = fdp::magic::phi_basis(p);
  auto psib = fdp::magic::psi_basis(p);
  auto vec = fdp::magic::solve_c_vectors(phib, psib, p);
  return fdp::magic::Evaluator(p, vec);
}

} // namespace

TEST_CASE("ball volumes") {
  CHECK(ball_volume(1).same_exact(DensityValue::exact(Rational(2), 0)));
  CHECK(ball_volume(2).same_exact(DensityValue::exact(Rational(1), 1)));
  CHECK(ball_volume(3).same_exact(DensityValue::exact(Rational(4, 3), 1)));
  CHECK(ball_volume(8).same_exact(DensityValue::exact(Rational(1, 24), 4)));
}

TEST_CASE("extremal densities") {
  // d=48: (3 pi / 2)^24 / 24!
  DensityValue v48 = extremal_density(48);
  Rational expect48 = fdp::exactnum::make_rational(
      fdp::exactnum::pow_int(Int(3), 24),
      fdp::exactnum::pow_int(Int(2), 24) * factorial(24));
  CHECK(v48.same_exact(DensityValue::exact(expect48, 24)));

  // d=8: pi^4/384, d=24: pi^12/12!
  CHECK(extremal_density(8).same_exact(DensityValue::exact(Rational(1, 384), 4)));
  CHECK(extremal_density(24).same_exact(
      DensityValue::exact(fdp::exactnum::make_rational(Int(1), factorial(12)), 12)));

  // the density functional decreases when the covolume grows
  CHECK(extremal_density(8).scaled(Rational(1, 2)).decimal <
        extremal_density(8).decimal);
}

TEST_CASE("lp ratio identity for d=8") {
  CHECK(lp_ratio_check(8));
}

TEST_CASE("lp ratio tolerance catches perturbation") {
  // a 1% perturbation of F(0) breaks the relative 1e-6 comparison
  MpFloat target = extremal_density(8).decimal;
  MpFloat perturbed = target * MpFloat(1.01);
  MpFloat rel = (perturbed - target).abs() / target;
  CHECK(rel.to_double() > 1e-6);
}

TEST_CASE("lattice shells from theta series") {
  LatticeShellData e8 = e8_shells(16);
  REQUIRE(!e8.shells.empty());
  CHECK(e8.shells[0] == std::pair<long, Int>(2, Int(240)));
  CHECK(e8.shells[1] == std::pair<long, Int>(4, Int(2160)));
  CHECK(e8.shells[2] == std::pair<long, Int>(6, Int(6720)));

  LatticeShellData leech = leech_shells(12);
  CHECK(leech.shells[0] == std::pair<long, Int>(4, Int(196560)));
  CHECK(leech.shells[1] == std::pair<long, Int>(6, Int(16773120)));

  // JSON round trip
  std::string js = e8.to_json();
  LatticeShellData back = LatticeShellData::from_json(js);
  CHECK(back.d == e8.d);
  CHECK(back.covolume == e8.covolume);
  CHECK(back.shells == e8.shells);
}

TEST_CASE("poisson residual on extremal self-dual data") {
  {
    auto ev = make_evaluator(8);
    LatticeShellData e8 = e8_shells(2 + 60);
    MpFloat res = poisson_residual(e8, e8, ev);
    MpFloat h0 = ev.value(fdp::magic::Side::h, Rational(0));
    CHECK((res / h0).to_double() < 1e-8);

    // corrupted covolume is detected
    LatticeShellData bad = e8;
    bad.covolume = Rational(101, 100);
    CHECK((poisson_residual(bad, bad, ev) / h0).to_double() > 1e-3);

    // odd norms are rejected
    LatticeShellData odd = e8;
    odd.shells.push_back({5, Int(2)});
    std::sort(odd.shells.begin(), odd.shells.end());
    CHECK_THROWS_AS(poisson_residual(odd, odd, ev), Error);
  }
  {
    auto ev = make_evaluator(24);
    LatticeShellData leech = leech_shells(4 + 60);
    MpFloat res = poisson_residual(leech, leech, ev);
    MpFloat h0 = ev.value(fdp::magic::Side::h, Rational(0));
    CHECK((res / h0).to_double() < 1e-8);
  }
}

TEST_CASE("cluster bounds") {
  DensityValue hex = DensityValue::approximate(
      MpFloat::pi() / MpFloat::sqrt(MpFloat(12L))); // classical planar value
  auto [lo, hi] = cluster_bounds(3, hex, Rational(1), Rational(10), 2);
  CHECK(lo.decimal.to_double() == doctest::Approx(3 * 0.9068996821 / 121).epsilon(1e-9));
  CHECK(hi.decimal.to_double() == doctest::Approx(3 * 0.9068996821 / 100).epsilon(1e-9));
  CHECK(lo.decimal < hi.decimal);

  // scaling law: lambda -> 10 lambda shrinks both by about 10^d
  auto [lo2, hi2] = cluster_bounds(3, hex, Rational(1), Rational(100), 2);
  CHECK((hi.decimal / hi2.decimal).to_double() == doctest::Approx(100.0).epsilon(1e-12));
  CHECK_THROWS_AS(cluster_bounds(3, hex, Rational(3), Rational(2), 2), Error);
}

TEST_CASE("kissing bound") {
  DensityValue delta1 = DensityValue::exact(Rational(1), 0); // Delta_1 = 1
  DensityValue b = kissing_bound(1, Rational(100), Rational(1, 33), delta1);
  CHECK(b.same_exact(DensityValue::exact(fdp::exactnum::make_rational(102, 33), 0)));
  CHECK(b.decimal.to_double() >= 3.0); // 1 + kiss_1 = 3

  DensityValue b2 = kissing_bound(1, Rational(100), Rational(2, 33), delta1);
  CHECK(b2.coeff == b.coeff * 2); // linear in the ratio

  CHECK_NOTHROW(kissing_bound(1, Rational(4), Rational(1, 3), delta1));
  CHECK_THROWS_AS(kissing_bound(1, Rational(3), Rational(1, 3), delta1), Error);
}
