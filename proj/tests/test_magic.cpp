#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fdp/magic/certificate.hpp"
#include "fdp/magic/conditions.hpp"
#include "fdp/magic/evaluate.hpp"
#include "fdp/support/error.hpp"
#include "fdp/support/linalg.hpp"

using namespace fdp::magic;
using fdp::Error;
using fdp::exactnum::Int;
using fdp::exactnum::Rational;
using fdp::series::RSeries;
using fdp::support::MpFloat;

namespace {

CVectors vectors_for(const MagicParams& p) {
  PhiBasis phib = phi_basis(p);
  PsiBasis psib = psi_basis(p);
  return solve_c_vectors(phib, psib, p);
}

} // namespace

TEST_CASE("parameters per dimension") {
  MagicParams p48 = compute_params(48);
  CHECK(p48.a == 6);
  CHECK(p48.l == 10);
  CHECK(p48.k == 38);
  CHECK(p48.b == 2);
  CHECK(p48.c == 0);

  MagicParams p8 = compute_params(8);
  CHECK(p8.a == 2);
  CHECK(p8.l == 2);
  CHECK(p8.k == 10);
  CHECK(p8.b == 1);

  MagicParams p24 = compute_params(24);
  CHECK(p24.a == 4);
  CHECK(p24.l == 4);
  CHECK(p24.k == 14);
  CHECK(p24.b == 1);

  CHECK(compute_params(32).c == Rational(397, 250));
  CHECK(compute_params(72).c == Rational(1471, 1000));

  CHECK_THROWS_AS(compute_params(16), Error);  // 16 mod 24 exclusion
  CHECK_THROWS_AS(compute_params(40), Error);
  CHECK_THROWS_AS(compute_params(12), Error);  // not a multiple of 8
  CHECK_THROWS_AS(compute_params(208), Error); // beyond the default cap
  CHECK(compute_params(208, 1200).d == 208);   // explicit cap override

  // basis dimension identity b = ceil(k/6) - l/2 across the default range
  for (long d = 8; d <= 200; d += 8) {
    if (d % 24 == 16) continue;
    MagicParams p = compute_params(d);
    CHECK(p.b == (p.k + 5) / 6 - p.l / 2);
  }
}

TEST_CASE("phi basis shape and normalization") {
  for (long d : {8, 24, 32, 48}) {
    MagicParams p = compute_params(d);
    PhiBasis basis = phi_basis(p);
    REQUIRE((long)basis.m.size() == p.b);
    REQUIRE((long)basis.m[0].size() == p.k / 2 - p.l);
    for (long i = 0; i < p.b; ++i) {
      RSeries row = basis.expand_row(basis.m[i], 2 * p.b + 4);
      for (long t = 0; t < p.b; ++t)
        CHECK(row.at_or_zero(2 * t).c0 == (t == i ? 1 : 0));
    }
  }
}

TEST_CASE("phi rows lie in (U-V) M_(k-2) + (U^2-V^2) M_(k-4)") {
  MagicParams p = compute_params(48);
  PhiBasis basis = phi_basis(p);
  const long order = p.k / 2 + 10;

  using fdp::modforms::GeneratorId;
  RSeries u = fdp::modforms::theta_fourth(GeneratorId::U, order);
  RSeries v = fdp::modforms::theta_fourth(GeneratorId::V, order);
  RSeries uv = u - v;
  RSeries u2v2 = u * u - v * v;

  // span basis: (U-V) E4^a E6^b (4a+6b = k-2=36) and (U^2-V^2) E4^a E6^b (=34...
  // weights: k-2 and k-4; collect all exact monomials
  std::vector<RSeries> span;
  auto add_family = [&](const RSeries& lead, long weight) {
    for (long a = 0; 4 * a <= weight; ++a) {
      if ((weight - 4 * a) % 6 != 0) continue;
      long b = (weight - 4 * a) / 6;
      RSeries m = lead;
      if (a > 0) m = m * fdp::modforms::eisenstein(GeneratorId::E4, order).power(a);
      if (b > 0) m = m * fdp::modforms::eisenstein(GeneratorId::E6, order).power(b);
      span.push_back(m.truncated(std::min(m.order(), order)));
    }
  };
  add_family(uv, p.k - 2);
  add_family(u2v2, p.k - 4);
  CHECK((long)span.size() == (p.k + 5) / 6); // dim of the big kernel

  for (long i = 0; i < p.b; ++i) {
    RSeries row = basis.expand_row(basis.m[i], order);
    fdp::linalg::Matrix cond;
    std::vector<Rational> rhs;
    for (long n = 0; n <= order; ++n) {
      std::vector<Rational> rowc;
      for (const auto& s : span) rowc.push_back(s.at_or_zero(n).c0);
      cond.push_back(std::move(rowc));
      rhs.push_back(row.at_or_zero(n).c0);
    }
    // membership = the linear system is solvable
    CHECK_NOTHROW(fdp::linalg::solve(cond, rhs));
  }
}

TEST_CASE("psi basis satisfies its defining constraints") {
  for (long d : {8, 24, 48}) {
    MagicParams p = compute_params(d);
    PsiBasis basis = psi_basis(p);
    REQUIRE((long)basis.m.size() == p.b);
    REQUIRE((long)basis.m[0].size() == (p.k + 6) / 4);
    const long order = p.l + 4 * p.b + 10;
    for (long i = 0; i < p.b; ++i) {
      auto poly = basis.row_polynomial(basis.m[i]);
      RSeries psi = poly.expand(order);
      for (long t = 0; 2 * t <= p.l; ++t) CHECK(psi.at_or_zero(2 * t).c0 == 0);
      RSeries w2s = fdp::modforms::psi_s_times_w2(poly, order);
      for (long j = 0; j <= p.l - p.a; ++j) CHECK(w2s.at_or_zero(j).c1 == 0);
      for (long t = 0; t < p.b; ++t)
        CHECK(w2s.at_or_zero(2 * t).c0 == (t == i ? 1 : 0));
    }
  }
}

TEST_CASE("psi_S coefficients are affine at nonpositive exponents") {
  MagicParams p = compute_params(48);
  CVectors vec = vectors_for(p);
  MagicSeries s = MagicSeries::build(p, vec, 30);
  RSeries g = s.w2_psi_s * s.delta_inv;
  for (long n = g.start(); n <= 0; ++n) CHECK(g.at(n).c2 == 0);
  bool quadratic_somewhere = false;
  for (long n = 2; n <= g.order(); ++n)
    if (g.at(n).c2 != 0) quadratic_somewhere = true;
  CHECK(quadratic_somewhere);
}

TEST_CASE("d=48 golden vectors") {
  MagicParams p = compute_params(48);
  CVectors vec = vectors_for(p);
  const long golden_phi[9] = {29393, 117572, 307819, 511955,
                              539410, 362729, 152114, 36480, 3840};
  Int unit = Int(128) * Int(6561); // 2^7 3^8
  REQUIRE(vec.c_phi.size() == 9);
  for (size_t i = 0; i < 9; ++i) CHECK(vec.c_phi[i] == unit * golden_phi[i]);
  const long golden_psi[11] = {565675,   7394933,  -38880096, 44550063,
                               41316945, -107522880, 39169185, 40077567,
                               -32756064, 5294597,  790075};
  REQUIRE(vec.c_psi.size() == 11);
  for (size_t i = 0; i < 11; ++i) CHECK(vec.c_psi[i] == golden_psi[i]);
}

TEST_CASE("vector normalization is canonical") {
  MagicParams p = compute_params(48);
  CVectors vec = vectors_for(p);
  Int g = 0;
  for (const auto& x : vec.c_phi) g = fdp::exactnum::gcd_int(g, x);
  for (const auto& x : vec.c_psi) g = fdp::exactnum::gcd_int(g, x);
  CHECK(g == 1);
  CHECK(vec.c_phi[0] > 0);
}

TEST_CASE("solved vectors annihilate the step-3 conditions at double order") {
  for (long d : {8, 24}) {
    MagicParams p = compute_params(d);
    CVectors vec = vectors_for(p);
    MagicSeries s = MagicSeries::build(p, vec, 4 * p.l + 16);
    // [w^0 r^j](-w^2 psi_S + phi) = 0 for even j in [0, l-a]
    for (long j = 0; j <= p.l - p.a; j += 2)
      CHECK(-s.w2_psi_s.at_or_zero(j).c0 + s.phi.at_or_zero(j).c0 == 0);
    // and the higher-order window conditions inherited from the bases
    for (long t = 0; 2 * t <= p.l; ++t) CHECK(s.psi.at_or_zero(2 * t).c0 == 0);
  }
}

TEST_CASE("truncation order choice") {
  MagicParams p = compute_params(48);
  CVectors vec = vectors_for(p);
  CHECK(choose_n(p, vec, TailMode::lemma_majorant) == 130);
  CHECK(choose_n(p, vec, TailMode::constant_term) == 120);
  // boundary: majorant(N) < 1 <= majorant(N-10)
  CHECK(truncation_majorant(p, vec, 130) < 1);
  CHECK(truncation_majorant(p, vec, 120) >= 1);
}

TEST_CASE("tail bound dominates partial sums") {
  Rational gamma2 = fdp::exactnum::exp_neg_pi_bounds(8).hi;
  for (long m : {20L, 60L}) {
    for (long pw : {14L, 56L}) {
      Rational bound = tail_sum_bound(m, pw, gamma2);
      Rational partial(0);
      for (long n = m + 1; n <= m + 200; ++n)
        partial += fdp::exactnum::pow_rational(Rational(n + 1), pw) *
                   fdp::exactnum::pow_rational(gamma2, n);
      CHECK(partial <= bound);
      // the R/S wrappers shift by the stated offset
      CHECK(tail_r_bound(m, pw, 5, gamma2) ==
            bound * fdp::exactnum::pow_rational(gamma2, -5));
    }
  }
}

TEST_CASE("conditions pass for d=8 and fail under corruption") {
  MagicParams p = compute_params(8);
  CVectors vec = vectors_for(p);
  long n = choose_n(p, vec);
  MagicSeries s = MagicSeries::build(p, vec, n);
  fdp::exactnum::PrecisionLadder max_lad{100, 11, 1};
  ConditionReport rep = check_conditions(s, n, max_lad);
  CHECK(rep.all());

  for (size_t i = 0; i < vec.c_psi.size(); ++i) {
    for (long delta : {+1L, -1L}) {
      CVectors bad = vec;
      bad.c_psi[i] += delta;
      MagicSeries sb = MagicSeries::build(p, bad, n);
      ConditionReport r = check_conditions(sb, n, max_lad);
      CHECK_FALSE(r.all());
      CHECK_FALSE(r.failed.empty());
    }
  }
}

TEST_CASE("verify_magic end to end") {
  CHECK_THROWS_AS(verify_magic(16), Error);
  MagicCertificate cert = verify_magic(8);
  CHECK(cert.valid());
  CHECK(cert.params.d == 8);
  CHECK_FALSE(cert.sign48.has_value());
  std::string j1 = cert.to_json();
  std::string j2 = verify_magic(8).to_json();
  CHECK(j1 == j2); // byte-identical certificates
  CHECK(j1.find("\"N\": " + std::to_string(cert.n_trunc)) != std::string::npos);
  CHECK(j1.find("\"I\": true") != std::string::npos);
}

TEST_CASE("float evaluator identities for d=8") {
  MagicParams p = compute_params(8);
  CVectors vec = vectors_for(p);
  Evaluator ev(p, vec);

  MpFloat h0 = ev.value(Side::h, Rational(0));
  MpFloat hh0 = ev.value(Side::h_hat, Rational(0));
  CHECK(h0 > MpFloat(0L));
  MpFloat rel = (h0 - hh0).abs() / h0;
  CHECK(rel.to_double() < 1e-9);

  // zeros on the even lattice shells
  CHECK(ev.value(Side::h, Rational(4)).to_double() == 0.0);
  CHECK(ev.value(Side::h_hat, Rational(2)).to_double() == 0.0);
  // beyond l the function is nonpositive
  CHECK(ev.value(Side::h, Rational(3)).to_double() < 0);
  CHECK(ev.value(Side::h, Rational(5)).to_double() < 0);
  // the transform side stays nonnegative (c = 0)
  for (long num = 1; num <= 9; num += 2)
    CHECK(ev.value(Side::h_hat, fdp::exactnum::make_rational(num, 2)).to_double() >= 0);
}

TEST_CASE("termwise pole guard") {
  MagicParams p = compute_params(24);
  CVectors vec = vectors_for(p);
  Evaluator ev(p, vec);
  CHECK_THROWS_AS(ev.value(Side::h_hat, Rational(2)), Error); // a-2 = 2 pole
  CHECK(ev.value(Side::h_hat, Rational(4)).to_double() == 0.0);
}

TEST_CASE("certified enclosures") {
  MagicParams p = compute_params(8);
  CVectors vec = vectors_for(p);
  Evaluator ev(p, vec);
  // even squared radii are exact zeros of the sin^2 factor
  auto z = ev.value_certified(Side::h, Rational(6), 8);
  CHECK(z.lo == 0);
  CHECK(z.hi == 0);
  // the enclosure brackets the float value in the convergence region
  for (const Rational& s : {Rational(5, 2), Rational(7, 2)}) {
    auto iv = ev.value_certified(Side::h, s, 8);
    MpFloat v = ev.value(Side::h, s);
    CHECK(MpFloat(iv.lo) < v);
    CHECK(v < MpFloat(iv.hi));
  }
  CHECK_THROWS_AS(ev.value_certified(Side::h, Rational(1, 2), 8), Error);
}

TEST_CASE("lower bound is below the float extension") {
  MagicParams p = compute_params(24);
  CVectors vec = vectors_for(p);
  long n = choose_n(p, vec);
  MagicSeries s = MagicSeries::build(p, vec, n);
  fdp::exactnum::PrecisionLadder lad{100, 11, 2};
  RationalBound b = assemble_hhat_lower_bound(s, n, lad);
  Evaluator ev(p, vec);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> dist(1, 1999);
  for (int i = 0; i < 20; ++i) {
    Rational sv = fdp::exactnum::make_rational(dist(rng), 1000); // in (0, 2) = (c, a-2)
    if (sv.get_den() == 1) continue;
    MpFloat lhs = ev.extension_over_sin2(Side::h_hat, sv);
    MpFloat rhs = MpFloat(b.num.eval(sv)) / MpFloat(b.den.eval(sv)) *
                  MpFloat::exp(-MpFloat::pi() * MpFloat(sv));
    CHECK(!(rhs > lhs));
  }
}

TEST_CASE("spectral threshold estimate matches the table for d=32") {
  Rational est = estimate_last_sign_change(32);
  Rational table = compute_params(32).c;
  CHECK(abs(est - table) <= Rational(2, 1000));
  // the float-mode crossing of the function itself sits to the left
  MagicParams p = compute_params(32);
  CVectors vec = vectors_for(p);
  Evaluator ev(p, vec);
  Rational f = ev.last_sign_change_float();
  CHECK(f > 0);
  CHECK(f <= est);
}
