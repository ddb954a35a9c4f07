#pragma once

#include <vector>

#include "fdp/exactnum/enclosure.hpp"
#include "fdp/magic/params.hpp"
#include "fdp/modforms/modforms.hpp"

namespace fdp::magic {

using exactnum::Int;
using exactnum::PrecisionLadder;
using exactnum::RationalInterval;
using series::RSeries;

// Basis of the weight-k space cut out inside W^(l+1) * span(Theta) by the
// operator phi -> phi_T + phi_S - phi. Rows are normalized so that
// phi_i = r^(2(i-1)) + O(r^(2b)).
struct PhiBasis {
  MagicParams params;
  // b x (k/2 - l) coefficients against Theta_j = W^(j-1) V^(k/2-l-j)
  // (the global W^(l+1) factor is implicit)
  std::vector<std::vector<Rational>> m;

  // theta polynomial of a coefficient row (includes the W^(l+1) factor)
  modforms::ThetaPolynomial row_polynomial(const std::vector<Rational>& coeffs) const;
  RSeries expand_row(const std::vector<Rational>& coeffs, long order) const;
};

// Basis of the subspace of M_{k+2}^{<=2} with [q^0..q^(l/2)] psi = 0 and
// [w r^j](w^2 Delta^(-l/2) psi_S) = 0 for j in {-l..-a}; rows normalized so
// w^2 (psi_i)_S = r^(2(i-1)) + O(r^(2b)).
struct PsiBasis {
  MagicParams params;
  // b x (k+6)/4 coefficients against the E-monomial list
  std::vector<std::vector<Rational>> m;

  modforms::EisensteinPolynomial row_polynomial(const std::vector<Rational>& coeffs) const;
};

PhiBasis phi_basis(const MagicParams& p, long order_hint = 0);
PsiBasis psi_basis(const MagicParams& p, long order_hint = 0);

// Integer coefficient vectors of the solved pair, normalized so that
// gcd(C_phi u C_psi) = 1 and the first nonzero entry of C_phi is positive.
struct CVectors {
  std::vector<Int> c_phi; // against Theta monomials
  std::vector<Int> c_psi; // against E monomials
};

CVectors solve_c_vectors(const PhiBasis& phi, const PsiBasis& psi, const MagicParams& p);

// Everything downstream needs the same handful of expansions; this bundles
// them at a common truncation order.
struct MagicSeries {
  MagicParams params;
  CVectors vec;
  long order = 0;
  RSeries phi;        // w-free
  RSeries phi_s;      // w-free
  RSeries psi;        // w-free q-series
  RSeries w2_psi_s;   // w-degree 2
  RSeries delta_inv;  // Delta^(-l/2), starts at r^-l, w-free

  static MagicSeries build(const MagicParams& p, const CVectors& vec, long order);
};

enum class TailMode {
  // Lemma-style majorants |P|(8,8,8) and 13|Q|(24,240,504).
  lemma_majorant,
  // Constant terms of the monomial vectors dotted with |C| (the inline
  // reading); kept selectable because only one of the two reproduces the
  // published truncation orders.
  constant_term,
};

inline constexpr TailMode kDefaultTailMode = TailMode::lemma_majorant;

// Rational upper bound for sum_{n>M} (n+1)^p x^n (x in (0,1)); first term
// times a geometric majorant. Raises if the ratio bound reaches 1.
Rational tail_sum_bound(long M, long p, const Rational& x);

// Upper bounds for the Lemma tail sums R_M(p,j), S_M(p,j) using the gamma_2
// decimal bracket of e^-pi.
Rational tail_r_bound(long M, long p, long j, const Rational& gamma2);
Rational tail_s_bound(long M, long p, long j, const Rational& gamma2);

// Smallest N = l + 10n (n >= 1) whose truncation-tail majorant is below 1.
// Tail bounds always use the tightest gamma bracket so the result does not
// depend on the condition ladder.
long choose_n(const MagicParams& p, const CVectors& vec, TailMode mode = kDefaultTailMode);

// The Step-6 majorant itself, exposed for boundary tests.
Rational truncation_majorant(const MagicParams& p, const CVectors& vec, long n,
                             TailMode mode = kDefaultTailMode);

} // namespace fdp::magic
