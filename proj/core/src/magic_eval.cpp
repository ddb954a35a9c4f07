#include <algorithm>
#include <vector>

#include "fdp/magic/evaluate.hpp"
#include "fdp/support/error.hpp"

namespace fdp::magic {

using exactnum::Int;
using exactnum::Rational;
using exactnum::RationalInterval;

namespace {

// tanh-sinh nodes on (0,1); weights folded with the substitution u=(x+1)/2
struct Quadrature {
  std::vector<MpFloat> u, w;
};

const Quadrature& quad_nodes() {
  static const Quadrature q = [] {
    Quadrature out;
    const double h = 1.0 / 64;
    MpFloat half_pi = MpFloat::pi() / MpFloat(2L);
    for (long k = -2200; k <= 2200; ++k) {
      MpFloat kh = MpFloat((double)(k * h));
      // x = tanh((pi/2) sinh(kh)); dx = (pi/2) cosh(kh) / cosh((pi/2) sinh(kh))^2
      MpFloat skh = (MpFloat::exp(kh) - MpFloat::exp(-kh)) / MpFloat(2L);
      MpFloat ckh = (MpFloat::exp(kh) + MpFloat::exp(-kh)) / MpFloat(2L);
      MpFloat arg = half_pi * skh;
      MpFloat ea = MpFloat::exp(arg), eia = MpFloat::exp(-arg);
      MpFloat ch = (ea + eia) / MpFloat(2L);
      MpFloat x = (ea - eia) / (ea + eia);
      MpFloat w = half_pi * ckh / (ch * ch) * MpFloat(h) / MpFloat(2L);
      if (w.to_double() < 1e-85) continue;
      out.u.push_back((x + MpFloat(1L)) / MpFloat(2L));
      out.w.push_back(w);
    }
    return out;
  }();
  return q;
}

// first-integral closed form: int_1^inf t^j e^(-ct) dt
// = (j!/c^(j+1)) e^(-c) sum_{i<=j} c^i/i!, meromorphically extended to c<0
MpFloat int_tj(const MpFloat& c, int j) {
  MpFloat ec = MpFloat::exp(-c);
  if (j == 0) return ec / c;
  if (j == 1) return ec * (c + MpFloat(1L)) / (c * c);
  MpFloat c2 = c * c;
  return ec * (c2 + MpFloat(2L) * c + MpFloat(2L)) / (c2 * c);
}

} // namespace

struct Evaluator::Impl {
  MagicParams p;
  CVectors vec;
  long order = 0;
  // w-graded coefficients of (-w^2 psi_S -/+ phi) * Delta^(-l/2),
  // exponents -l .. order
  struct Graded {
    long lo;
    std::vector<Rational> c0, c1, c2;
  };
  Graded first_h, first_hh;
  // second-leg series (-pi^2 psi +/- phi_S) * Delta^(-l/2): the pi^2-free
  // parts A = psi*Dinv and B = phi_S*Dinv, exponents 1..order-ish
  std::vector<Rational> second_a, second_b; // index = exponent, from 0
  long second_top = 0;
  Rational a01;

  // per-node cached factors of the second integral
  std::vector<MpFloat> node_a, node_b, node_u;

  MpFloat first_leg(Side side, const MpFloat& s_f, const Rational& s) const;
  MpFloat second_leg(Side side, const MpFloat& s_f) const;
};

Evaluator::Evaluator(const MagicParams& p, const CVectors& vec, long order_hint) : params_(p) {
  // past choose_n(p, vec) the r^(l+10) truncation sandwich holds, which the
  // certified remainder bounds rely on
  long order = order_hint > 0 ? order_hint : std::max(p.l + 170, choose_n(p, vec) + 10);
  MagicSeries ms = MagicSeries::build(p, vec, order);

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->vec = vec;
  impl->order = order;

  // products with Delta^(-l/2) (sound truncation window ends at order - l)
  series::RSeries prod_psi = ms.w2_psi_s * ms.delta_inv;   // w-graded
  series::RSeries prod_phi = ms.phi * ms.delta_inv;        // w-free
  series::RSeries prod_phis = ms.phi_s * ms.delta_inv;     // w-free
  series::RSeries prod_psi_plain = ms.psi * ms.delta_inv;  // w-free

  long top = prod_psi.order();
  auto grade = [&](int phi_sign) {
    Impl::Graded g;
    g.lo = -p.l;
    g.c0.assign(top + p.l + 1, Rational(0));
    g.c1.assign(top + p.l + 1, Rational(0));
    g.c2.assign(top + p.l + 1, Rational(0));
    for (long m = -p.l; m <= top; ++m) {
      auto c = prod_psi.at(m);
      Rational f = prod_phi.at(m).c0;
      g.c0[m + p.l] = -c.c0 + Rational(phi_sign) * f;
      g.c1[m + p.l] = -c.c1;
      g.c2[m + p.l] = -c.c2;
    }
    return g;
  };
  impl->first_h = grade(-1);
  impl->first_hh = grade(+1);
  impl->a01 = impl->first_h.c1[p.l]; // [w^1 r^0]
  if (impl->first_h.c2[p.l] != 0)
    raise(ErrorKind::internal, "unexpected w^2 content at r^0");

  impl->second_top = std::min(prod_psi_plain.order(), prod_phis.order());
  impl->second_a.assign(impl->second_top + 1, Rational(0));
  impl->second_b.assign(impl->second_top + 1, Rational(0));
  for (long m = 1; m <= impl->second_top; ++m) {
    impl->second_a[m] = prod_psi_plain.at_or_zero(m).c0;
    impl->second_b[m] = prod_phis.at_or_zero(m).c0;
  }
  for (long m = std::min(prod_psi_plain.start(), prod_phis.start()); m <= 0; ++m)
    if (prod_psi_plain.at_or_zero(m).c0 != 0 || prod_phis.at_or_zero(m).c0 != 0)
      raise(ErrorKind::internal, "second-leg series must start at r^1");

  // cache the node values of A, B and u
  const Quadrature& q = quad_nodes();
  MpFloat pi = MpFloat::pi();
  for (size_t k = 0; k < q.u.size(); ++k) {
    const MpFloat& u = q.u[k];
    MpFloat r = MpFloat::exp(-pi / u); // e^(-pi t), t = 1/u
    MpFloat a(0L), b(0L), rp(1L);
    for (long m = 0; m <= impl->second_top; ++m) {
      if (m > 0) rp = rp * r;
      if (impl->second_a[m] != 0) a = a + MpFloat(impl->second_a[m]) * rp;
      if (impl->second_b[m] != 0) b = b + MpFloat(impl->second_b[m]) * rp;
    }
    MpFloat ufac = MpFloat::pow_si(u, p.d / 2 - 2) * q.w[k];
    impl->node_a.push_back(a * ufac);
    impl->node_b.push_back(b * ufac);
    impl->node_u.push_back(u);
  }
  impl_ = impl;
}

MpFloat Evaluator::Impl::first_leg(Side side, const MpFloat& s_f, const Rational&) const {
  const Graded& g = side == Side::h ? first_h : first_hh;
  MpFloat pi = MpFloat::pi();
  MpFloat acc(0L);
  long top = (long)g.c0.size() - 1 + g.lo;
  for (long m = g.lo; m <= top; ++m) {
    const Rational& c0 = g.c0[m - g.lo];
    const Rational& c1 = g.c1[m - g.lo];
    const Rational& c2 = g.c2[m - g.lo];
    if (c0 == 0 && c1 == 0 && c2 == 0) continue;
    MpFloat c = pi * (s_f + MpFloat(m));
    if (c0 != 0) acc = acc + MpFloat(c0) * int_tj(c, 0);
    if (c1 != 0) acc = acc + MpFloat(c1) * pi * int_tj(c, 1);
    if (c2 != 0) acc = acc + MpFloat(c2) * pi * pi * int_tj(c, 2);
  }
  return acc;
}

MpFloat Evaluator::Impl::second_leg(Side side, const MpFloat& s_f) const {
  MpFloat pi = MpFloat::pi();
  MpFloat pi2 = pi * pi;
  MpFloat acc(0L);
  for (size_t k = 0; k < node_u.size(); ++k) {
    MpFloat e = MpFloat::exp(-pi * s_f * node_u[k]);
    MpFloat integrand = -pi2 * node_a[k];
    if (side == Side::h) integrand = integrand + node_b[k];
    else integrand = integrand - node_b[k];
    acc = acc + integrand * e;
  }
  return acc;
}

MpFloat Evaluator::value(Side side, const Rational& s) const {
  const MagicParams& p = params_;
  if (s < 0) raise(ErrorKind::domain, "value: s must be >= 0");
  if (s == 0) return MpFloat::pi() * MpFloat(impl_->a01) / MpFloat(4L);
  if (s.get_den() == 1 && s.get_num() % 2 == 0) {
    if (s >= p.a) return MpFloat(0L); // zero of the sin^2 factor
    raise(ErrorKind::domain,
          "value: even integer s at or below a-2 is a removable singularity "
          "of the termwise evaluator");
  }
  MpFloat s_f(s);
  MpFloat ext = impl_->first_leg(side, s_f, s) + impl_->second_leg(side, s_f);
  MpFloat half_pi_s = MpFloat::pi() * s_f / MpFloat(2L);
  MpFloat sn = MpFloat::sin(half_pi_s);
  return sn * sn * ext;
}

Rational Evaluator::h0_over_pi() const { return impl_->a01 / 4; }

MpFloat Evaluator::extension_over_sin2(Side side, const Rational& s) const {
  if (s.get_den() == 1 && s.get_num() % 2 == 0 && s <= params_.a - 2 && s >= 0)
    raise(ErrorKind::domain, "extension_over_sin2: pole");
  MpFloat s_f(s);
  return (impl_->first_leg(side, s_f, s) + impl_->second_leg(side, s_f)) * MpFloat::pi();
}

Rational Evaluator::last_sign_change_float() const {
  const MagicParams& p = params_;
  if (p.a - 2 <= 0) return Rational(0);
  const long grid = 400;
  Rational span(p.a - 2);
  Rational step = span / grid;

  auto sign_at = [&](const Rational& s) {
    return value(Side::h_hat, s).sign();
  };

  // walk from the right end; the estimate targets the last sign change
  Rational hi_pt = span - step / 2;
  int hi_sign = sign_at(hi_pt);
  Rational lo, hi;
  bool found = false;
  Rational prev = hi_pt;
  int prev_sign = hi_sign;
  for (long i = 1; i < grid; ++i) {
    Rational pt = span - step / 2 - step * i;
    if (!(pt > 0)) break;
    int sg = sign_at(pt);
    if (sg != 0 && prev_sign != 0 && sg != prev_sign) {
      lo = pt;
      hi = prev;
      found = true;
      break;
    }
    prev = pt;
    prev_sign = sg;
  }
  if (!found) return Rational(0);

  int lo_sign = sign_at(lo);
  for (int it = 0; it < 40; ++it) {
    Rational mid = (lo + hi) / 2;
    int sg = sign_at(mid);
    if (sg == lo_sign) lo = mid;
    else hi = mid;
    if (hi - lo < Rational(1, 1000000)) break;
  }
  // round up to 4 decimal digits (approximation from the right)
  Int up = exactnum::ceil_rational(hi * 10000);
  return Rational(up) / 10000;
}

RationalInterval Evaluator::value_certified(Side side, const Rational& s, int digits) const {
  const MagicParams& p = params_;
  long conv = side == Side::h ? p.l : p.a - 2;
  if (!(s > conv))
    raise(ErrorKind::domain, "value_certified: s outside the convergence region");
  if (s.get_den() == 1 && s.get_num() % 2 == 0)
    return RationalInterval(Rational(0), Rational(0)); // sin^2 factor vanishes

  int wd = digits + 10;
  RationalInterval pi_iv = exactnum::pi_bounds(std::max(20, wd));
  Rational gamma2 = exactnum::exp_neg_pi_bounds(11).hi;
  if (!(truncation_majorant(params_, impl_->vec, impl_->order) < 1))
    raise(ErrorKind::resource,
          "value_certified: evaluation order below the truncation sandwich");

  // main sum of the first leg with interval terms
  const Impl::Graded& g = side == Side::h ? impl_->first_h : impl_->first_hh;
  long top = (long)g.c0.size() - 1 + g.lo;
  RationalInterval acc(Rational(0), Rational(0));
  for (long m = g.lo; m <= top; ++m) {
    const Rational& c0 = g.c0[m - g.lo];
    const Rational& c1 = g.c1[m - g.lo];
    const Rational& c2 = g.c2[m - g.lo];
    if (c0 == 0 && c1 == 0 && c2 == 0) continue;
    RationalInterval c = pi_iv * (s + m); // positive in the convergence region
    RationalInterval ec = exactnum::exp_enclosure(-c.hi, wd);
    ec = RationalInterval(ec.lo, exactnum::exp_enclosure(-c.lo, wd).hi);
    RationalInterval cinv = c.inv();
    // I_j per closed form
    RationalInterval i0 = ec * cinv;
    RationalInterval i1 = ec * (c + Rational(1)) * cinv * cinv;
    RationalInterval i2 =
        ec * (c * c + c * Rational(2) + Rational(2)) * cinv * cinv * cinv;
    acc = acc + i0 * c0 + (pi_iv * i1) * c1 + (pi_iv * pi_iv * i2) * c2;
  }

  // Remainder of the first leg. Write v*Dinv - window =
  //   (v - v_trunc) * Dinv + v_trunc * (Dinv - Dinv_partial)
  // and bound each piece for t >= 1 with the r^(l+10) truncation sandwich,
  // an eta-product bound on Dinv, and a geometric comparison of the Dinv
  // partial tail at r0 = 1/15 > e^-pi.
  auto eta_inv_bound = [&](const Rational& q0) {
    Rational prod(1);
    for (long n = 1; n <= 40; ++n) prod *= (1 - exactnum::pow_rational(q0, n));
    Rational eps = exactnum::pow_rational(q0, 41) / ((1 - q0) * (1 - q0));
    return exactnum::pow_rational((1 / prod) * (1 / (1 - eps)), 12 * p.l);
  };
  Rational d_up = eta_inv_bound(gamma2 * gamma2);
  RationalInterval e10 = exactnum::exp_enclosure(-(pi_iv.lo * (s + 10)), wd);
  Rational rem1 = 2 * d_up * e10.hi / ((s + 10) * pi_iv.lo);

  Rational rem2(0);
  {
    const Rational r0(1, 15);
    long pp = impl_->order - p.l; // the Dinv partial reaches this far
    Rational scale =
        exactnum::pow_rational(1 / r0, pp + 1) * exactnum::pow_rational(r0, -p.l) *
        eta_inv_bound(r0 * r0);
    // per-exponent majorant sum_m |c_m| e^(-pi1 m), with the t-polynomial
    // factor of int_1 t^2 e^(-pi t u) dt frozen at u0 = pp + 1 + s
    Rational gl = exactnum::exp_enclosure(-pi_iv.lo, wd).hi;
    Rational csum(0), gpow(1);
    const Impl::Graded& gg = side == Side::h ? impl_->first_h : impl_->first_hh;
    for (long m = 0; m <= impl_->order && m + p.l < (long)gg.c0.size(); ++m) {
      if (m > 0) gpow *= gl;
      csum += (abs(gg.c0[m + p.l]) + abs(gg.c1[m + p.l]) + abs(gg.c2[m + p.l])) * gpow;
    }
    Rational u0 = Rational(pp + 1) + s;
    Rational polyfac = (pi_iv.hi * u0 * pi_iv.hi * u0 + 2 * pi_iv.hi * u0 + 2) /
                       exactnum::pow_rational(pi_iv.lo * u0, 3);
    Rational ehead = exactnum::exp_enclosure(-(pi_iv.lo * u0), wd).hi;
    rem2 = scale * csum * pi_iv.hi * pi_iv.hi * polyfac * ehead;
  }
  Rational rem = rem1 + rem2;
  acc = acc + RationalInterval(-rem, rem);

  // second leg in [-U2, U2] (the series there starts at r^1 and its own
  // tail is covered by the same geometric comparison)
  Rational u2(0);
  for (long m = 1; m <= impl_->second_top; ++m) {
    Rational w = abs(impl_->second_a[m]) * pi_iv.hi * pi_iv.hi + abs(impl_->second_b[m]);
    u2 += w * exactnum::pow_rational(gamma2, m) / (pi_iv.lo * m);
  }
  u2 += rem2;
  acc = acc + RationalInterval(-u2, u2);

  // sin^2(pi s / 2) enclosure
  RationalInterval x = pi_iv * (s / 2);
  auto sin_taylor = [&](const Rational& v) {
    Rational term = v, sum = v;
    Rational v2 = v * v;
    long kmax = 40 + 3 * (long)exactnum::ceil_rational(abs(v)).get_si();
    for (long k = 1; k <= kmax; ++k) {
      term = term * v2 / Rational((2 * k) * (2 * k + 1));
      if (k % 2 == 1) sum -= term;
      else sum += term;
    }
    Rational err = abs(term) * 2;
    return RationalInterval(sum - err, sum + err);
  };
  RationalInterval sa = sin_taylor(x.lo), sb = sin_taylor(x.hi);
  Rational width = x.width();
  RationalInterval sn(std::min(sa.lo, sb.lo) - width, std::max(sa.hi, sb.hi) + width);
  RationalInterval sn2 = sn * sn;
  if (sn2.lo < 0) sn2.lo = 0;
  return sn2 * acc;
}

} // namespace fdp::magic
