#include "fdp/magic/pipeline.hpp"
#include "fdp/support/error.hpp"

namespace fdp::magic {

using exactnum::pow_rational;
using exactnum::Rational;

Rational tail_sum_bound(long M, long p, const Rational& x) {
  if (!(x > 0 && x < 1)) raise(ErrorKind::domain, "tail_sum_bound: x must be in (0,1)");
  // terms t_n = (n+1)^p x^n for n > M; t_{n+1}/t_n <= x ((M+3)/(M+2))^p
  Rational ratio = x * pow_rational(Rational(M + 3, M + 2), p);
  if (!(ratio < 1)) raise(ErrorKind::domain, "tail_sum_bound: geometric ratio not below 1");
  Rational first = pow_rational(Rational(M + 2), p) * pow_rational(x, M + 1);
  return first / (1 - ratio);
}

Rational tail_r_bound(long M, long p, long j, const Rational& gamma2) {
  if (M + 1 <= j) raise(ErrorKind::domain, "tail_r_bound: need M+1 > j");
  // sum_{n>M} (n+1)^p e^(-pi(n-j)) <= gamma2^(-j) sum_{n>M} (n+1)^p gamma2^n
  return tail_sum_bound(M, p, gamma2) * pow_rational(gamma2, -j);
}

Rational tail_s_bound(long M, long p, long j, const Rational& gamma2) {
  if (M + 1 <= j) raise(ErrorKind::domain, "tail_s_bound: need M+1 > j");
  Rational g2 = gamma2 * gamma2;
  return tail_sum_bound(M, p, g2) * pow_rational(g2, -j);
}

namespace {

// The two scalar majorant factors of the Step-6 quantity.
void majorant_factors(const MagicParams& p, const CVectors& vec, TailMode mode, Rational& a_phi,
                      Rational& b_psi) {
  if (mode == TailMode::lemma_majorant) {
    // |P|(8,8,8): every monomial of phi has total degree k/2
    Rational pw = pow_rational(Rational(8), p.k / 2);
    Rational s(0);
    for (const auto& c : vec.c_phi) s += Rational(abs(c));
    a_phi = s * pw;
    auto mons = modforms::eisenstein_monomials(p.k + 2);
    Rational q(0);
    for (size_t t = 0; t < mons.size(); ++t)
      q += Rational(abs(vec.c_psi[t])) * pow_rational(Rational(24), mons[t].i) *
           pow_rational(Rational(240), mons[t].j) * pow_rational(Rational(504), mons[t].n);
    b_psi = q * 13;
  } else {
    // constant terms: only the pure W-power Theta monomial survives at r=0,
    // every E-monomial has constant term 1
    a_phi = Rational(abs(vec.c_phi.back()));
    Rational q(0);
    for (const auto& c : vec.c_psi) q += Rational(abs(c));
    b_psi = q * 13;
  }
}

} // namespace

Rational truncation_majorant(const MagicParams& p, const CVectors& vec, long n, TailMode mode) {
  Rational a_phi, b_psi;
  majorant_factors(p, vec, mode, a_phi, b_psi);
  static const Rational gamma2 = exactnum::exp_neg_pi_bounds(11).hi;
  Rational r = a_phi * tail_r_bound(n, (3 * p.k - 2) / 2, p.l + 10, gamma2);
  Rational s = b_psi * tail_s_bound(n / 2, (5 * p.k + 10) / 4, p.l / 2 + 5, gamma2);
  return std::max(r, s);
}

long choose_n(const MagicParams& p, const CVectors& vec, TailMode mode) {
  for (long n = 1; n <= 100000; ++n) {
    long cand = p.l + 10 * n;
    Rational m;
    try {
      m = truncation_majorant(p, vec, cand, mode);
    } catch (const Error&) {
      continue; // geometric ratio not yet below 1
    }
    if (m < 1) return cand;
  }
  raise(ErrorKind::internal, "choose_n: no truncation order found");
}

} // namespace fdp::magic
