#include "fdp/modforms/modforms.hpp"

#include <map>
#include <mutex>

#include "fdp/support/error.hpp"

namespace fdp::modforms {

using exactnum::Int;

int weight(GeneratorId g) {
  switch (g) {
    case GeneratorId::E2:
    case GeneratorId::U:
    case GeneratorId::V:
    case GeneratorId::W: return 2;
    case GeneratorId::E4: return 4;
    case GeneratorId::E6: return 6;
    case GeneratorId::Delta: return 12;
  }
  raise(ErrorKind::internal, "unknown generator");
}

namespace {

std::mutex g_sigma_mutex;
std::map<std::pair<int, long>, Int> g_sigma_memo;

// Read-mostly generator cache; inserts are idempotent.
std::mutex g_gen_mutex;
std::map<std::pair<int, long>, RSeries> g_gen_memo;

RSeries cached(int key, long order, RSeries (*build)(long)) {
  {
    std::lock_guard<std::mutex> lk(g_gen_mutex);
    auto it = g_gen_memo.lower_bound({key, order});
    if (it != g_gen_memo.end() && it->first.first == key)
      return it->second.truncated(order);
  }
  RSeries s = build(order);
  std::lock_guard<std::mutex> lk(g_gen_mutex);
  g_gen_memo.insert({{key, order}, s});
  return s;
}

RSeries build_eis(long order, int k, long scale) {
  RSeries s(0, order);
  s.set(0, WPoly(Rational(1)));
  for (long n = 1; 2 * n <= order; ++n)
    s.set(2 * n, WPoly(Rational(scale) * Rational(sigma(k - 1, n))));
  return s;
}

RSeries build_e2(long order) { return build_eis(order, 2, -24); }
RSeries build_e4(long order) { return build_eis(order, 4, 240); }
RSeries build_e6(long order) { return build_eis(order, 6, -504); }

// Theta00 = sum r^(n^2); Theta01 = sum (-1)^n r^(n^2);
// Theta10 = r^(1/4) * 2 sum_{n>=0} r^(n(n+1)).
RSeries build_theta00(long order) {
  RSeries s(0, order);
  s.set(0, WPoly(Rational(1)));
  for (long n = 1; n * n <= order; ++n) s.add_to(n * n, WPoly(Rational(2)));
  return s;
}

RSeries build_theta01(long order) {
  RSeries s(0, order);
  s.set(0, WPoly(Rational(1)));
  for (long n = 1; n * n <= order; ++n)
    s.add_to(n * n, WPoly(Rational(n % 2 == 0 ? 2 : -2)));
  return s;
}

RSeries build_u(long order) {
  RSeries t = build_theta00(order);
  return (t * t) * (t * t);
}

RSeries build_w(long order) {
  RSeries t = build_theta01(order);
  return (t * t) * (t * t);
}

RSeries build_v(long order) {
  // V = r * (2 sum_{n>=0} r^(n(n+1)))^4
  RSeries s(0, order);
  for (long n = 0; n * (n + 1) <= order; ++n) s.add_to(n * (n + 1), WPoly(Rational(2)));
  RSeries f = (s * s) * (s * s);
  RSeries v = f.shifted(1);
  return v.truncated(std::min(v.order(), order));
}

RSeries build_delta_eta(long order) {
  // q prod (1-q^n)^24 with q = r^2
  long qord = order / 2;
  RSeries p = RSeries::constant(Rational(1), order);
  for (long n = 1; n <= qord; ++n) {
    RSeries f(0, order);
    f.set(0, WPoly(Rational(1)));
    if (2 * n <= order) f.set(2 * n, WPoly(Rational(-1)));
    p = p * f;
    p = p.truncated(order); // factors are exact, no truncation loss
  }
  RSeries p4 = (p * p) * (p * p);
  RSeries p8 = p4 * p4;
  RSeries p24 = (p8 * p8) * p8;
  return p24.shifted(2).truncated(order);
}

} // namespace

Int sigma(int k, long n) {
  if (n <= 0) raise(ErrorKind::domain, "sigma(k,n) needs n >= 1");
  std::lock_guard<std::mutex> lk(g_sigma_mutex);
  auto it = g_sigma_memo.find({k, n});
  if (it != g_sigma_memo.end()) return it->second;
  Int total = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    total += exactnum::pow_int(Int(d), k);
    long e = n / d;
    if (e != d) total += exactnum::pow_int(Int(e), k);
  }
  g_sigma_memo.insert({{k, n}, total});
  return total;
}

RSeries eisenstein(GeneratorId kind, long order) {
  if (order < 0) raise(ErrorKind::domain, "eisenstein: order must be >= 0");
  switch (kind) {
    case GeneratorId::E2: return cached(2, order, build_e2);
    case GeneratorId::E4: return cached(4, order, build_e4);
    case GeneratorId::E6: return cached(6, order, build_e6);
    default: raise(ErrorKind::domain, "eisenstein: expected E2, E4 or E6");
  }
}

RSeries theta_fourth(GeneratorId kind, long order) {
  if (order < 0) raise(ErrorKind::domain, "theta_fourth: order must be >= 0");
  switch (kind) {
    case GeneratorId::U: return cached(100, order, build_u);
    case GeneratorId::V: return cached(101, order, build_v);
    case GeneratorId::W: return cached(102, order, build_w);
    default: raise(ErrorKind::domain, "theta_fourth: expected U, V or W");
  }
}

RSeries delta(long order) {
  if (order < 2) raise(ErrorKind::domain, "delta: order must be >= 2");
  RSeries e4 = eisenstein(GeneratorId::E4, order);
  RSeries e6 = eisenstein(GeneratorId::E6, order);
  RSeries lhs = ((e4 * e4) * e4 - e6 * e6) * Rational(1, 1728);
  RSeries eta = cached(12, order, build_delta_eta);
  for (long n = 0; n <= order; ++n) {
    if (!(lhs.at_or_zero(n) == eta.at_or_zero(n)))
      raise(ErrorKind::internal, "delta: Eisenstein and eta-product expansions disagree");
  }
  return eta;
}

RSeries delta_inv_pow(long l, long order) {
  if (l < 2 || l % 2 != 0) raise(ErrorKind::domain, "delta_inv_pow: l must be even, >= 2");
  // Delta^(l/2) starts at r^l; the reciprocal carries relative precision
  // order(Delta^(l/2)) - l, and must reach exponent `order` from -l.
  long need = order + 2 * l + 4;
  RSeries dl = delta(need).power(l / 2);
  RSeries inv = dl.inverse();
  inv = inv.truncated(std::min(inv.order(), order));
  for (long n = inv.start(); n <= inv.order(); ++n) {
    const WPoly& c = inv.at(n);
    if (c.c1 != 0 || c.c2 != 0) raise(ErrorKind::internal, "delta_inv_pow: non-scalar coefficient");
    if (c.c0 < 0)
      raise(ErrorKind::check_failed, "delta_inv_pow: negative expansion coefficient");
  }
  return inv;
}

RSeries ThetaPolynomial::expand(long order) const {
  RSeries acc = RSeries::zero(order);
  for (const auto& m : monomials) {
    if (m.u + m.v + m.w != degree)
      raise(ErrorKind::domain, "ThetaPolynomial is not homogeneous");
    RSeries term = RSeries::constant(m.coeff, order);
    if (m.u > 0) term = term * theta_fourth(GeneratorId::U, order).power(m.u);
    if (m.v > 0) term = term * theta_fourth(GeneratorId::V, order).power(m.v);
    if (m.w > 0) term = term * theta_fourth(GeneratorId::W, order).power(m.w);
    acc = acc + term.truncated(std::min(term.order(), order));
  }
  return acc;
}

ThetaPolynomial ThetaPolynomial::s_transform() const {
  // (U,V,W) -> (-U,-W,-V): swap v and w exponents, pick up (-1)^degree
  ThetaPolynomial r = *this;
  for (auto& m : r.monomials) {
    std::swap(m.v, m.w);
    if (degree % 2 == 1) m.coeff = -m.coeff;
  }
  return r;
}

ThetaPolynomial ThetaPolynomial::abs() const {
  ThetaPolynomial r = *this;
  for (auto& m : r.monomials) m.coeff = ::abs(m.coeff);
  return r;
}

Rational ThetaPolynomial::eval(const Rational& x, const Rational& y, const Rational& z) const {
  Rational acc(0);
  for (const auto& m : monomials)
    acc += m.coeff * exactnum::pow_rational(x, m.u) * exactnum::pow_rational(y, m.v) *
           exactnum::pow_rational(z, m.w);
  return acc;
}

RSeries phi_s(const ThetaPolynomial& p, long order) { return p.s_transform().expand(order); }

std::vector<EisensteinMonomial> eisenstein_monomials(long k_plus_2) {
  if (k_plus_2 < 4 || k_plus_2 % 4 != 0)
    raise(ErrorKind::domain, "eisenstein_monomials: weight must be a positive multiple of 4");
  std::vector<EisensteinMonomial> out;
  for (long j = 0; j <= k_plus_2 / 4; ++j) {
    EisensteinMonomial m;
    m.j = j;
    m.i = ((k_plus_2 / 2 - 2 * j) % 3 + 3) % 3;
    long rem = k_plus_2 - 2 * m.i - 4 * j;
    if (rem < 0 || rem % 6 != 0)
      raise(ErrorKind::internal, "eisenstein_monomials: bad exponent triple");
    m.n = rem / 6;
    out.push_back(m);
  }
  return out;
}

RSeries eisenstein_monomial_series(const EisensteinMonomial& m, long order) {
  RSeries acc = RSeries::constant(Rational(1), order);
  if (m.i > 0) acc = acc * eisenstein(GeneratorId::E2, order).power(m.i);
  if (m.j > 0) acc = acc * eisenstein(GeneratorId::E4, order).power(m.j);
  if (m.n > 0) acc = acc * eisenstein(GeneratorId::E6, order).power(m.n);
  return acc.truncated(std::min(acc.order(), order));
}

RSeries EisensteinPolynomial::expand(long order) const {
  auto mons = eisenstein_monomials(k_plus_2);
  if (mons.size() != coeffs.size())
    raise(ErrorKind::domain, "EisensteinPolynomial: coefficient count mismatch");
  RSeries acc = RSeries::zero(order);
  for (size_t t = 0; t < mons.size(); ++t) {
    if (coeffs[t] == 0) continue;
    acc = acc + eisenstein_monomial_series(mons[t], order) * coeffs[t];
  }
  return acc;
}

Rational EisensteinPolynomial::abs_eval(const Rational& x2, const Rational& x4,
                                        const Rational& x6) const {
  auto mons = eisenstein_monomials(k_plus_2);
  Rational acc(0);
  for (size_t t = 0; t < mons.size(); ++t)
    acc += ::abs(coeffs[t]) * exactnum::pow_rational(x2, mons[t].i) *
           exactnum::pow_rational(x4, mons[t].j) * exactnum::pow_rational(x6, mons[t].n);
  return acc;
}

RSeries psi_s_times_w2(const EisensteinPolynomial& q, long order) {
  auto mons = eisenstein_monomials(q.k_plus_2);
  if (mons.size() != q.coeffs.size())
    raise(ErrorKind::domain, "psi_s_times_w2: coefficient count mismatch");

  // split on the E2-degree: Q = Q0 + E2 Q1 + E2^2 Q2 (series of the E4/E6
  // parts only)
  RSeries q0 = RSeries::zero(order), q1 = RSeries::zero(order), q2 = RSeries::zero(order);
  for (size_t t = 0; t < mons.size(); ++t) {
    const auto& m = mons[t];
    if (q.coeffs[t] == 0) continue;
    EisensteinMonomial rest{0, m.j, m.n};
    RSeries part = eisenstein_monomial_series(rest, order) * q.coeffs[t];
    if (m.i == 0) q0 = q0 + part;
    else if (m.i == 1) q1 = q1 + part;
    else if (m.i == 2) q2 = q2 + part;
    else raise(ErrorKind::domain, "psi_s_times_w2: E2-degree above 2");
  }
  RSeries e2 = eisenstein(GeneratorId::E2, order);
  RSeries qfull = q0 + e2 * q1 + (e2 * e2) * q2;
  RSeries wlin = (e2 * q2) * Rational(-12) + q1 * Rational(-6);
  RSeries w0 = q2 * Rational(36);

  long m = std::min({qfull.order(), wlin.order(), w0.order(), order});
  RSeries out = RSeries::zero(m);
  for (long n = 0; n <= m; ++n)
    out.set(n, WPoly(w0.at_or_zero(n).c0, wlin.at_or_zero(n).c0, qfull.at_or_zero(n).c0));
  return out;
}

} // namespace fdp::modforms
