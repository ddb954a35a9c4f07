#include <algorithm>

#include "fdp/magic/pipeline.hpp"
#include "fdp/support/error.hpp"
#include "fdp/support/linalg.hpp"

namespace fdp::magic {

using exactnum::Rational;
using modforms::GeneratorId;
using series::WPoly;

namespace {

// Incremental power ladder base^0..base^max at a fixed order.
std::vector<RSeries> power_ladder(const RSeries& base, long max_exp, long order) {
  std::vector<RSeries> out;
  out.reserve(max_exp + 1);
  out.push_back(RSeries::constant(Rational(1), order));
  for (long e = 1; e <= max_exp; ++e) {
    RSeries next = out.back() * base;
    out.push_back(next.truncated(std::min(next.order(), order)));
  }
  return out;
}

} // namespace

modforms::ThetaPolynomial PhiBasis::row_polynomial(const std::vector<Rational>& coeffs) const {
  const long nmon = params.theta_monomial_count();
  if ((long)coeffs.size() != nmon)
    raise(ErrorKind::domain, "phi row: coefficient count mismatch");
  modforms::ThetaPolynomial p;
  p.degree = params.k / 2;
  for (long j = 1; j <= nmon; ++j) {
    if (coeffs[j - 1] == 0) continue;
    modforms::ThetaMonomial m;
    m.u = 0;
    m.w = params.l + j;            // W^(l+1) * W^(j-1)
    m.v = params.k / 2 - params.l - j;
    m.coeff = coeffs[j - 1];
    p.monomials.push_back(m);
  }
  return p;
}

RSeries PhiBasis::expand_row(const std::vector<Rational>& coeffs, long order) const {
  return row_polynomial(coeffs).expand(order);
}

PhiBasis phi_basis(const MagicParams& p, long order_hint) {
  const long nmon = p.theta_monomial_count();
  long order = order_hint > 0 ? order_hint : std::max(p.k / 2, 4 * p.b + p.l) + 8;

  for (int attempt = 0; attempt < 6; ++attempt, order *= 2) {
    RSeries u = modforms::theta_fourth(GeneratorId::U, order);
    RSeries v = modforms::theta_fourth(GeneratorId::V, order);
    RSeries w = modforms::theta_fourth(GeneratorId::W, order);
    auto upow = power_ladder(u, p.l + nmon, order);
    auto vpow = power_ladder(v, p.k / 2, order);
    auto wpow = power_ladder(w, p.l + nmon, order);

    // T(c_j) = c_T + c_S - c for the candidate c_j = W^(l+j) V^(k/2-l-j):
    //   c_T = (-1)^b U^a V^b,  c_S = -V^a W^b  (a = l+j, b = k/2-l-j).
    std::vector<RSeries> tc;
    tc.reserve(nmon);
    for (long j = 1; j <= nmon; ++j) {
      long a = p.l + j;
      long bb = p.k / 2 - p.l - j;
      RSeries c = wpow[a] * vpow[bb];
      RSeries ct = upow[a] * vpow[bb];
      if (bb % 2 == 1) ct = -ct;
      RSeries cs = -(vpow[a] * wpow[bb]);
      RSeries t = ct + cs - c;
      tc.push_back(t.truncated(std::min(t.order(), order)));
    }

    // A weight-k form over Gamma(2) vanishing through r^(k/2) is zero, so
    // conditions at r^0..r^(k/2) pin the kernel exactly.
    long cond_top = std::min<long>(order, p.k / 2 + 4);
    linalg::Matrix cond;
    for (long n = 0; n <= cond_top; ++n) {
      std::vector<Rational> row(nmon);
      for (long j = 0; j < nmon; ++j) row[j] = tc[j].at_or_zero(n).c0;
      cond.push_back(std::move(row));
    }
    auto kernel = linalg::null_space(cond, nmon);
    if ((long)kernel.size() != p.b) continue; // truncation too low: retry larger

    // Normalize rows to phi_i = r^(2(i-1)) + O(r^(2b)).
    linalg::Matrix window(p.b, std::vector<Rational>(p.b));
    std::vector<RSeries> expansions;
    PhiBasis basis;
    basis.params = p;
    for (long i = 0; i < p.b; ++i) {
      RSeries phi_i = RSeries::zero(order);
      for (long j = 1; j <= nmon; ++j) {
        if (kernel[i][j - 1] == 0) continue;
        long a = p.l + j, bb = p.k / 2 - p.l - j;
        phi_i = phi_i + (wpow[a] * vpow[bb]) * kernel[i][j - 1];
      }
      expansions.push_back(phi_i);
      for (long t = 0; t < p.b; ++t) window[i][t] = phi_i.at_or_zero(2 * t).c0;
    }
    linalg::Matrix winv = linalg::inverse(window);
    basis.m.assign(p.b, std::vector<Rational>(nmon, Rational(0)));
    for (long i = 0; i < p.b; ++i)
      for (long t = 0; t < p.b; ++t)
        for (long j = 0; j < nmon; ++j) basis.m[i][j] += winv[i][t] * kernel[t][j];
    return basis;
  }
  raise(ErrorKind::check_failed, "phi_basis: kernel rank never stabilized at b");
}

modforms::EisensteinPolynomial PsiBasis::row_polynomial(
    const std::vector<Rational>& coeffs) const {
  modforms::EisensteinPolynomial q;
  q.k_plus_2 = params.k + 2;
  q.coeffs = coeffs;
  return q;
}

PsiBasis psi_basis(const MagicParams& p, long order_hint) {
  const auto mons = modforms::eisenstein_monomials(p.k + 2);
  const long nmon = (long)mons.size();
  if (nmon != p.eis_monomial_count())
    raise(ErrorKind::internal, "psi_basis: monomial count mismatch");
  long order = order_hint > 0 ? order_hint : p.l + 4 * p.b + 8;

  for (int attempt = 0; attempt < 6; ++attempt, order *= 2) {
    // per-monomial series and the w^1 component of w^2 (monomial)_S
    std::vector<RSeries> full, w1part;
    RSeries e2 = modforms::eisenstein(GeneratorId::E2, order);
    for (const auto& m : mons) {
      full.push_back(modforms::eisenstein_monomial_series(m, order));
      modforms::EisensteinMonomial rest{0, m.j, m.n};
      RSeries base = modforms::eisenstein_monomial_series(rest, order);
      if (m.i == 1) w1part.push_back(base * Rational(-6));
      else if (m.i == 2) {
        RSeries t = (e2 * base) * Rational(-12);
        w1part.push_back(t.truncated(std::min(t.order(), order)));
      } else w1part.push_back(RSeries::zero(order));
    }

    linalg::Matrix cond;
    // (a) [q^t] psi = 0 for t = 0..l/2
    for (long t = 0; 2 * t <= p.l; ++t) {
      std::vector<Rational> row(nmon);
      for (long j = 0; j < nmon; ++j) row[j] = full[j].at_or_zero(2 * t).c0;
      cond.push_back(std::move(row));
    }
    // (b) [w^1 r^j](w^2 psi_S) = 0 for j = 0, 2, ..., l-a
    for (long j = 0; j <= p.l - p.a; j += 2) {
      std::vector<Rational> row(nmon);
      for (long t = 0; t < nmon; ++t) row[t] = w1part[t].at_or_zero(j).c0;
      cond.push_back(std::move(row));
    }
    auto kernel = linalg::null_space(cond, nmon);
    if ((long)kernel.size() != p.b) continue;

    // Normalize against the w^0 window, [w^0](w^2 psi_S) = 36 Q2.
    PsiBasis basis;
    basis.params = p;
    linalg::Matrix window(p.b, std::vector<Rational>(p.b));
    for (long i = 0; i < p.b; ++i) {
      modforms::EisensteinPolynomial q;
      q.k_plus_2 = p.k + 2;
      q.coeffs = kernel[i];
      RSeries w2s = modforms::psi_s_times_w2(q, 2 * p.b + 2);
      for (long t = 0; t < p.b; ++t) window[i][t] = w2s.at_or_zero(2 * t).c0;
    }
    linalg::Matrix winv = linalg::inverse(window);
    basis.m.assign(p.b, std::vector<Rational>(nmon, Rational(0)));
    for (long i = 0; i < p.b; ++i)
      for (long t = 0; t < p.b; ++t)
        for (long j = 0; j < nmon; ++j) basis.m[i][j] += winv[i][t] * kernel[t][j];
    return basis;
  }
  raise(ErrorKind::check_failed,
        "psi_basis: constrained subspace dimension never stabilized at b");
}

CVectors solve_c_vectors(const PhiBasis& phi, const PsiBasis& psi, const MagicParams& p) {
  const long b = p.b;
  long order = p.l + 2;

  // expansions of the phi rows and of [w^0](w^2 (psi_i)_S)
  std::vector<RSeries> phi_rows, psi_w0;
  for (long i = 0; i < b; ++i) {
    phi_rows.push_back(phi.expand_row(phi.m[i], order));
    RSeries w2s = modforms::psi_s_times_w2(psi.row_polynomial(psi.m[i]), order);
    psi_w0.push_back(w2s);
  }

  // [w^0 r^j](-w^2 psi_S + phi) = 0 for j in {0, 2, ..., l-a};
  // unknowns (v_phi | v_psi)
  linalg::Matrix cond;
  for (long j = 0; j <= p.l - p.a; j += 2) {
    std::vector<Rational> row(2 * b);
    for (long i = 0; i < b; ++i) {
      row[i] = phi_rows[i].at_or_zero(j).c0;
      row[b + i] = -psi_w0[i].at_or_zero(j).c0;
    }
    cond.push_back(std::move(row));
  }
  auto kernel = linalg::null_space(cond, 2 * b);
  if (kernel.size() != 1)
    raise(ErrorKind::check_failed,
          "solve_c_vectors: solution space dimension is " + std::to_string(kernel.size()) +
              ", expected 1");

  // C_phi = n * v_phi M_phi, C_psi = n * v_psi M_psi with integer n chosen
  // so the concatenation is integral with gcd 1 and C_phi leads positive.
  const auto& v = kernel[0];
  std::vector<Rational> raw;
  for (long j = 0; j < p.theta_monomial_count(); ++j) {
    Rational acc(0);
    for (long i = 0; i < b; ++i) acc += v[i] * phi.m[i][j];
    raw.push_back(acc);
  }
  size_t phi_len = raw.size();
  for (long j = 0; j < p.eis_monomial_count(); ++j) {
    Rational acc(0);
    for (long i = 0; i < b; ++i) acc += v[b + i] * psi.m[i][j];
    raw.push_back(acc);
  }

  Int den = 1;
  for (const auto& x : raw) den = exactnum::lcm_int(den, x.get_den());
  std::vector<Int> ints;
  ints.reserve(raw.size());
  for (const auto& x : raw) ints.push_back(x.get_num() * (den / x.get_den()));
  Int g = 0;
  for (const auto& x : ints) g = exactnum::gcd_int(g, x);
  if (g == 0) raise(ErrorKind::internal, "solve_c_vectors: zero solution");
  for (auto& x : ints) x /= g;
  int lead = 0;
  for (size_t i = 0; i < phi_len && lead == 0; ++i) lead = sgn(ints[i]);
  if (lead < 0)
    for (auto& x : ints) x = -x;

  CVectors out;
  out.c_phi.assign(ints.begin(), ints.begin() + phi_len);
  out.c_psi.assign(ints.begin() + phi_len, ints.end());
  return out;
}

MagicSeries MagicSeries::build(const MagicParams& p, const CVectors& vec, long order) {
  MagicSeries s;
  s.params = p;
  s.vec = vec;
  s.order = order;

  modforms::ThetaPolynomial tp;
  tp.degree = p.k / 2;
  for (long j = 1; j <= p.theta_monomial_count(); ++j) {
    if (vec.c_phi[j - 1] == 0) continue;
    modforms::ThetaMonomial m;
    m.w = p.l + j;
    m.v = p.k / 2 - p.l - j;
    m.coeff = Rational(vec.c_phi[j - 1]);
    tp.monomials.push_back(m);
  }
  s.phi = tp.expand(order);
  s.phi_s = modforms::phi_s(tp, order);

  modforms::EisensteinPolynomial ep;
  ep.k_plus_2 = p.k + 2;
  for (const auto& c : vec.c_psi) ep.coeffs.push_back(Rational(c));
  s.psi = ep.expand(order);
  s.w2_psi_s = modforms::psi_s_times_w2(ep, order);
  s.delta_inv = modforms::delta_inv_pow(p.l, order);
  return s;
}

} // namespace fdp::magic
