#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "fdp/magic/conditions.hpp"
#include "fdp/support/error.hpp"

namespace fdp::magic {

using exactnum::Int;
using exactnum::PrecisionLadder;
using exactnum::Rational;
using exactnum::RatPoly;
using exactnum::pow_rational;

namespace {

// -------- shared assembly pieces --------

struct Brackets {
  Rational pi1, pi2, gamma1, gamma2;
};

Brackets ladder_brackets(const PrecisionLadder& lad) {
  auto pi = exactnum::pi_bounds(lad.pi_digits);
  auto ga = exactnum::exp_neg_pi_bounds(lad.gamma_digits);
  return {pi.lo, pi.hi, ga.lo, ga.hi};
}

// truncated Mercator brackets of w = -ln x:
//   w1 = sum_{n=1}^{N} (1-x)^n / n        (w1 < w on (0,1))
//   x*w2 = x*w1 + (1-x)^(N+1)/(N+1)       (w < w2)
struct LogBrackets {
  RatPoly w1;
  RatPoly xw2; // x * w2, a polynomial
};

LogBrackets log_brackets(long n) {
  RatPoly one_minus_x(std::vector<Rational>{Rational(1), Rational(-1)});
  RatPoly pw = one_minus_x;
  RatPoly w1;
  for (long t = 1; t <= n; ++t) {
    w1 = w1 + pw * Rational(1, t);
    pw = pw * one_minus_x;
  }
  RatPoly x = RatPoly::monomial(Rational(1), 1);
  LogBrackets lb;
  lb.w1 = w1;
  lb.xw2 = x * w1 + pw * Rational(1, n + 1); // pw = (1-x)^(N+1)
  return lb;
}

// w-graded truncations of the assembled series as plain polynomials in
// x = r = e^(-w); exponents 0..N.
struct Graded {
  RatPoly w0, w1, w2; // components of w^2 psi_S
  RatPoly phi, phi_s, psi;
};

Graded graded_polys(const MagicSeries& s, long n) {
  if (s.order < n) raise(ErrorKind::internal, "series order below truncation order");
  auto take = [&](const series::RSeries& f, int wpow) {
    std::vector<Rational> v(n + 1, Rational(0));
    for (long t = std::max<long>(0, f.start()); t <= n; ++t) v[t] = f.at(t).coeff(wpow);
    return RatPoly(std::move(v));
  };
  Graded g;
  g.w0 = take(s.w2_psi_s, 0);
  g.w1 = take(s.w2_psi_s, 1);
  g.w2 = take(s.w2_psi_s, 2);
  g.phi = take(s.phi, 0);
  g.phi_s = take(s.phi_s, 0);
  g.psi = take(s.psi, 0);
  return g;
}

bool coeffs_nonneg(const RatPoly& p) {
  for (const auto& c : p.coeffs())
    if (c < 0) return false;
  return true;
}

bool coeffs_nonpos(const RatPoly& p) {
  for (const auto& c : p.coeffs())
    if (c > 0) return false;
  return true;
}

// positivity of A0 + A1 w + A2 wq^2 for w in (w1, w2), wq in {w1, xw2/x}
// pinned by the caller; both linear-slot substitutions are checked.
bool sandwich_positive(const RatPoly& a0, const RatPoly& a1, const RatPoly& a2,
                       const LogBrackets& lb, bool quad_uses_w2, const Rational& hi,
                       const exactnum::PositivityOptions& popts) {
  RatPoly x = RatPoly::monomial(Rational(1), 1);
  Rational zero(0);
  if (quad_uses_w2) {
    // x^2 (A0 + A1 w_j + A2 w2^2) = x^2 A0 + x A1 (x w_j) + A2 (x w2)^2
    RatPoly quad = a2 * (lb.xw2 * lb.xw2);
    RatPoly e1 = x * x * a0 + x * a1 * (x * lb.w1) + quad;
    if (!exactnum::poly_positive_on(e1, zero, hi, popts)) return false;
    RatPoly e2 = x * x * a0 + x * a1 * lb.xw2 + quad;
    return exactnum::poly_positive_on(e2, zero, hi, popts);
  }
  // x (A0 + A1 w_j + A2 w1^2) = x A0 + A1 (x w_j) + x A2 w1^2
  RatPoly quad = x * (a2 * (lb.w1 * lb.w1));
  RatPoly e1 = x * a0 + a1 * (x * lb.w1) + quad;
  if (!exactnum::poly_positive_on(e1, zero, hi, popts)) return false;
  RatPoly e2 = x * a0 + a1 * lb.xw2 + quad;
  return exactnum::poly_positive_on(e2, zero, hi, popts);
}

// -------- the truncated product with Delta^(-l/2) --------

// coefficient arrays of (E-polynomial) * (partial sum of Delta^(-l/2)),
// indexed by exponent m in [-l, 2N-l-2]; exact finite convolution.
struct ProductGrading {
  long lo = 0, hi = 0;              // exponent range
  std::vector<Rational> g0, g1, g2; // index m - lo

  Rational at(const std::vector<Rational>& v, long m) const {
    if (m < lo || m > hi) return Rational(0);
    return v[m - lo];
  }
};

// sign_flip_phi: +1 builds -w^2psi_S + phi (transform side), -1 builds
// -w^2psi_S - phi; slack: coefficient of the x^(l+10) w-free slack term.
ProductGrading truncated_product(const MagicSeries& s, long n, int sign_phi, int slack_sign) {
  const long l = s.params.l;
  ProductGrading pg;
  pg.lo = -l;
  pg.hi = 2 * n - l - 2;
  pg.g0.assign(pg.hi - pg.lo + 1, Rational(0));
  pg.g1.assign(pg.hi - pg.lo + 1, Rational(0));
  pg.g2.assign(pg.hi - pg.lo + 1, Rational(0));

  // E = -trunc(w^2 psi_S) + sign_phi * trunc(phi) + slack_sign * 2 x^(l+10)
  std::vector<Rational> e0(n + 1, Rational(0)), e1(n + 1, Rational(0)), e2(n + 1, Rational(0));
  for (long t = 0; t <= n; ++t) {
    const auto c = s.w2_psi_s.at_or_zero(t);
    e0[t] = -c.c0;
    e1[t] = -c.c1;
    e2[t] = -c.c2;
    e0[t] += Rational(sign_phi) * s.phi.at_or_zero(t).c0;
  }
  e0[l + 10] += Rational(2 * slack_sign);

  // delta partial: exponents -l .. n-l-2
  for (long t = 0; t <= n; ++t) {
    bool any = e0[t] != 0 || e1[t] != 0 || e2[t] != 0;
    if (!any) continue;
    for (long d = -l; d <= n - l - 2; ++d) {
      const Rational& dv = s.delta_inv.at(d).c0;
      if (dv == 0) continue;
      long m = t + d;
      pg.g0[m - pg.lo] += e0[t] * dv;
      pg.g1[m - pg.lo] += e1[t] * dv;
      pg.g2[m - pg.lo] += e2[t] * dv;
    }
  }
  return pg;
}

// -------- rationalization operator --------

// lower (or upper) bound of q * pi^i * e(-pi)^m over the bracket corners
Rational corner_bound(const Rational& q, int i, long m, const Brackets& br, bool upper) {
  Rational best;
  bool first = true;
  const Rational* pis[2] = {&br.pi1, &br.pi2};
  const Rational* gas[2] = {&br.gamma1, &br.gamma2};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Rational v = q * pow_rational(*pis[a], i) * pow_rational(*gas[b], m);
      if (first || (upper ? v > best : v < best)) {
        best = v;
        first = false;
      }
    }
  }
  return best;
}

struct BTerm {
  RatPoly num;   // numerator against (s+m)^den_pow
  long m = 0;    // pole location -m
  long den_pow = 0;
};

// One-sided rational bound of e^(pi s) int_pi^infty p(w) e^(-mw) e^(-sw) dw
// for quadratic p with rational coefficients; per-monomial corner bounds on
// the numerator polynomials over even denominator powers keep the bound
// one-sided for every s > 0.
BTerm b_operator(const Rational& c0, const Rational& c1, const Rational& c2, long m,
                 const Brackets& br, bool upper) {
  // p(w+pi) coefficients in Q[pi]:
  //   [w^0]: c0 + c1 pi + c2 pi^2, [w^1]: c1 + 2 c2 pi, [w^2]: c2
  BTerm t;
  t.m = m;
  auto rb = [&](const Rational& q, int i) { return corner_bound(q, i, m, br, upper); };

  // group 1: (s+m) [w^0] / (s+m)^2, expanded per s-power
  Rational g1_s = rb(c0, 0) + rb(c1, 1) + rb(c2, 2);
  Rational g1_c = rb(c0 * m, 0) + rb(c1 * m, 1) + rb(c2 * m, 2);
  // group 2: [w^1] / (s+m)^2
  Rational g2_c = rb(c1, 0) + rb(c2 * 2, 1);
  RatPoly low(std::vector<Rational>{g1_c + g2_c, g1_s});
  if (c2 == 0) {
    t.num = low;
    t.den_pow = 2;
    return t;
  }
  // group 3: 2 (s+m) [w^2] / (s+m)^4
  Rational g3_s = rb(c2 * 2, 0);
  Rational g3_c = rb(c2 * 2 * m, 0);
  RatPoly splusm(std::vector<Rational>{Rational(m), Rational(1)});
  t.num = low * (splusm * splusm) + RatPoly(std::vector<Rational>{g3_c, g3_s});
  t.den_pow = 4;
  return t;
}

// grouped variant for a pure-constant p_m at a pole: C~ / (s+m) with the
// corner chosen for the sign of (s+m) on the target interval
BTerm b_operator_grouped(const Rational& c0, long m, const Brackets& br, bool upper,
                         int splusm_sign) {
  BTerm t;
  t.m = m;
  bool eff_upper = splusm_sign > 0 ? upper : !upper;
  Rational ctil = corner_bound(c0, 0, m, br, eff_upper);
  // emit as C~ (s+m) / (s+m)^2 so the common denominator keeps even powers
  t.num = RatPoly(std::vector<Rational>{ctil * m, ctil});
  t.den_pow = 2;
  return t;
}

struct AssembledQ {
  RatPoly num, den;
  std::vector<std::pair<long, long>> den_factors; // (m, power)
};

// Sum of B-terms over the common denominator prod (s+m)^pow.
AssembledQ assemble(const std::vector<BTerm>& terms) {
  std::map<long, long> pow_by_m;
  for (const auto& t : terms) pow_by_m[t.m] = std::max(pow_by_m[t.m], t.den_pow);
  AssembledQ q;
  q.den = RatPoly::constant(Rational(1));
  for (const auto& [m, pw] : pow_by_m) {
    RatPoly f(std::vector<Rational>{Rational(m), Rational(1)});
    for (long i = 0; i < pw; ++i) q.den = q.den * f;
    q.den_factors.emplace_back(m, pw);
  }
  q.num = RatPoly();
  for (const auto& t : terms) {
    RatPoly cof = q.den;
    RatPoly f(std::vector<Rational>{Rational(t.m), Rational(1)});
    for (long i = 0; i < t.den_pow; ++i) cof = cof.divexact(f);
    q.num = q.num + t.num * cof;
  }
  return q;
}

// Builds the bound terms for the bound on the meromorphic extension of the
// kept part of (E-polynomial)*(Delta^(-l/2) partial):
//   A1(w) = sum_{m<M} p_m(w) e^(-mw) + e^(-Mw) w^2 [w^2]p_M.
// upper=false gives the Step-8 lower bound (min corners); upper=true the
// Step-9 upper bound, with grouped corners for the pure-constant poles
// chosen by the sign of (s+m) on the target interval.
AssembledQ assemble_bound(const ProductGrading& pg, long m_split, const MagicParams& p,
                          const Brackets& br, bool upper, bool allow_grouped,
                          const Rational& target_point) {
  std::vector<BTerm> terms;
  for (long m = pg.lo; m < m_split; ++m) {
    Rational c0 = pg.at(pg.g0, m), c1 = pg.at(pg.g1, m), c2 = pg.at(pg.g2, m);
    if (c0 == 0 && c1 == 0 && c2 == 0) continue;
    if (m <= 1 && c2 != 0)
      raise(ErrorKind::internal, "quadratic w-part at a nonpositive exponent");
    if (allow_grouped && m <= 0 && c1 == 0 && c2 == 0) {
      // simple pole kept symbolic so the assembled numerator picks up the
      // exact (s+m) factor; the corner is valid on the target side
      int sign_at_target = sgn(target_point + m);
      if (sign_at_target == 0) raise(ErrorKind::internal, "target point on a pole");
      terms.push_back(b_operator_grouped(c0, m, br, upper, sign_at_target));
      continue;
    }
    terms.push_back(b_operator(c0, c1, c2, m, br, upper));
  }
  // the kept w^2-part of the split term
  Rational c2 = pg.at(pg.g2, m_split);
  if (c2 != 0) terms.push_back(b_operator(Rational(0), Rational(0), c2, m_split, br, upper));
  // make sure every structural pole 0,2,...,a-2 appears in the denominator
  for (long m = -(p.a - 2); m <= 0; m += 2) {
    bool found = false;
    for (const auto& t : terms)
      if (t.m == m) found = true;
    if (!found) {
      BTerm zero;
      zero.m = m;
      zero.den_pow = 2;
      zero.num = RatPoly();
      terms.push_back(zero);
    }
  }
  return assemble(terms);
}

} // namespace

ConditionReport check_conditions(const MagicSeries& s, long n_trunc,
                                 const PrecisionLadder& ladder, const ConditionOptions& opts) {
  const MagicParams& p = s.params;
  const long n = n_trunc;
  ConditionReport rep;
  const ConditionReport& prior = opts.prior;
  Brackets br = ladder_brackets(ladder);
  Graded g = graded_polys(s, n);
  RatPoly slack = RatPoly::monomial(Rational(1), p.l + 10);
  Rational zero(0);

  // (I) C_phi >= 0
  rep.i = true;
  for (const auto& c : s.vec.c_phi)
    if (c < 0) rep.i = false;
  (void)prior;
  if (!rep.i) {
    rep.failed = "I";
    if (opts.short_circuit) return rep;
  }

  // (II) psi-trunc - x^(l+10) has only nonnegative q-coefficients
  rep.ii = coeffs_nonneg(g.psi - slack);
  if (!rep.ii && rep.failed.empty()) rep.failed = "II";
  if (!rep.ii && opts.short_circuit) return rep;

  // (III) -pi2^2 (psi + slack) - (phi_S + slack) > 0 on (0, gamma2)
  {
    rep.iii = prior.iii;
    if (!rep.iii) {
      RatPoly p3 = (g.psi + slack) * (-br.pi2 * br.pi2) - (g.phi_s + slack);
      rep.iii = exactnum::poly_positive_on(p3, zero, br.gamma2, opts.positivity);
    }
    if (!rep.iii && rep.failed.empty()) rep.failed = "III";
    if (!rep.iii && opts.short_circuit) return rep;
  }

  LogBrackets lb = log_brackets(n);

  // (IV) lower truncation of w^2 psi_S + phi: quadratic slot at w1^2 needs
  // nonnegative quadratic coefficients
  {
    rep.iv = prior.iv;
    if (!rep.iv) {
      RatPoly p0 = g.w0 + g.phi - slack * 2;
      rep.iv = coeffs_nonneg(g.w2) &&
               sandwich_positive(p0, g.w1, g.w2, lb, /*quad_uses_w2=*/false, br.gamma2,
                                 opts.positivity);
    }
    if (!rep.iv && rep.failed.empty()) rep.failed = "IV";
    if (!rep.iv && opts.short_circuit) return rep;
  }

  // (V) -upper truncation of w^2 psi_S + phi: quadratic slot at w2^2 needs
  // nonpositive quadratic coefficients
  {
    rep.v = prior.v;
    if (!rep.v) {
      RatPoly q0 = -g.w0 + g.phi - slack * 2;
      rep.v = coeffs_nonneg(g.w2) &&
              sandwich_positive(q0, -g.w1, -g.w2, lb, /*quad_uses_w2=*/true, br.gamma2,
                                opts.positivity);
    }
    if (!rep.v && rep.failed.empty()) rep.failed = "V";
    if (!rep.v && opts.short_circuit) return rep;
  }

  ProductGrading pg = truncated_product(s, n, +1, -1);
  long top = 2 * n - p.l - 2;
  long m_split = std::max<long>(1, top >> ladder.split_exponent);

  // (VI) the dropped tail of the product is positive for w >= pi
  {
    std::vector<Rational> a0(top + 1, Rational(0)), a1(top + 1, Rational(0)),
        a2(top + 1, Rational(0));
    for (long m = std::max<long>(m_split, 1); m <= top; ++m) {
      a0[m] = pg.at(pg.g0, m);
      a1[m] = pg.at(pg.g1, m);
      if (m > m_split) a2[m] = pg.at(pg.g2, m);
    }
    RatPoly A0{std::vector<Rational>(a0)}, A1{std::vector<Rational>(a1)},
        A2{std::vector<Rational>(a2)};
    rep.vi = prior.vi ||
             (coeffs_nonpos(A2) &&
              sandwich_positive(A0, A1, A2, lb, /*quad_uses_w2=*/true, br.gamma2,
                                opts.positivity));
    if (!rep.vi && rep.failed.empty()) rep.failed = "VI";
    if (!rep.vi && opts.short_circuit) return rep;
  }

  // (VII) rational lower bound positive on (c, a-2), with the structural
  // double poles dividing the denominator exactly
  if (prior.vii) {
    rep.vii = true;
  } else {
    AssembledQ q =
        assemble_bound(pg, m_split, p, br, /*upper=*/false, /*allow_grouped=*/false, Rational(1));
    RatPoly known = RatPoly::constant(Rational(1));
    for (long j = 0; j <= p.a / 2 - 1; ++j) {
      RatPoly f(std::vector<Rational>{Rational(-2 * j), Rational(1)});
      known = known * (f * f);
    }
    RatPoly quo, rem;
    RatPoly::divmod(q.den, known, quo, rem);
    bool ok = rem.is_zero() && coeffs_nonneg(quo);
    if (ok && p.c < p.a - 2)
      ok = exactnum::poly_positive_on(q.num, p.c, Rational(p.a - 2), opts.positivity);
    rep.vii = ok;
    if (!rep.vii && rep.failed.empty()) rep.failed = "VII";
  }
  return rep;
}

RationalBound assemble_hhat_lower_bound(const MagicSeries& s, long n_trunc,
                                        const PrecisionLadder& ladder) {
  const MagicParams& p = s.params;
  Brackets br = ladder_brackets(ladder);
  ProductGrading pg = truncated_product(s, n_trunc, +1, -1);
  long m_split = std::max<long>(1, (2 * n_trunc - p.l - 2) >> ladder.split_exponent);
  AssembledQ q = assemble_bound(pg, m_split, p, br, false, false, Rational(1));
  return {q.num, q.den};
}

namespace {

// number of distinct roots in the open interval, nudging endpoints off roots
long root_count_nudged(const exactnum::SturmChain& chain, const RatPoly& p, Rational lo,
                       Rational hi) {
  Rational eps = (hi - lo) / 1000000;
  for (int tries = 0; tries < 64 && p.eval(lo) == 0; ++tries) lo += eps / (tries + 1);
  for (int tries = 0; tries < 64 && p.eval(hi) == 0; ++tries) hi -= eps / (tries + 1);
  if (!(lo < hi)) return 0;
  return chain.variations_at(lo) - chain.variations_at(hi);
}

} // namespace

Rational estimate_last_sign_change(const MagicSeries& s, long n_trunc) {
  const MagicParams& p = s.params;
  if (p.a - 2 <= 0) return Rational(0);
  PrecisionLadder lad{100, 11, 4};
  RationalBound b = assemble_hhat_lower_bound(s, n_trunc, lad);
  exactnum::SturmChain chain = exactnum::SturmChain::build(b.num);

  Rational lo(0), hi(p.a - 2);
  hi -= Rational(1, 100000);
  if (root_count_nudged(chain, b.num, lo, hi) == 0) return Rational(0);
  // invariant: the last root lies in (lo, hi]
  while (hi - lo > Rational(1, 100000)) {
    Rational mid = (lo + hi) / 2;
    if (root_count_nudged(chain, b.num, mid, hi) >= 1) lo = mid;
    else hi = mid;
  }
  return Rational(exactnum::ceil_rational(hi * 10000)) / 10000;
}

Rational estimate_last_sign_change(long d) {
  MagicParams p = compute_params(d);
  PhiBasis phib = phi_basis(p);
  PsiBasis psib = psi_basis(p);
  CVectors vec = solve_c_vectors(phib, psib, p);
  long n = choose_n(p, vec);
  MagicSeries series = MagicSeries::build(p, vec, n);
  return estimate_last_sign_change(series, n);
}

bool check_sign_48(const MagicSeries& s, long n_trunc, const PrecisionLadder& ladder,
                   const ConditionOptions& opts) {
  const MagicParams& p = s.params;
  if (p.d != 48) raise(ErrorKind::domain, "check_sign_48: only defined for d = 48");
  const long n = n_trunc;
  Brackets br = ladder_brackets(ladder);
  Rational zero(0);

  // Upper-side truncation of -w^2 psi_S - phi times the full Delta partial.
  // Every term is kept (no tail split), so the only inequalities are the
  // truncation sandwich, the dropped negative tail integrals and the
  // corner bounds; the grouped corners are valid on the target band (6,8).
  ProductGrading pg = truncated_product(s, n, -1, +1);
  long top = 2 * n - p.l - 2;
  AssembledQ q =
      assemble_bound(pg, top + 1, p, br, /*upper=*/true, /*allow_grouped=*/true, Rational(7));

  // exact divisibility by (s-6)(s-8), then positivity of the quotient
  RatPoly f68(std::vector<Rational>{Rational(48), Rational(-14), Rational(1)});
  RatPoly quo, rem;
  RatPoly::divmod(q.num, f68, quo, rem);
  if (!rem.is_zero()) return false;
  if (exactnum::poly_positive_on(quo, zero, Rational(10), opts.positivity)) return true;
  // the certified content lives on (6,8); the full-interval check can be
  // spoiled by corner slack away from the poles
  return exactnum::poly_positive_on(quo, Rational(6), Rational(8), opts.positivity);
}

} // namespace fdp::magic
