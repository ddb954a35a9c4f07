#pragma once

#include <vector>

#include "fdp/series/rseries.hpp"

namespace fdp::modforms {

using exactnum::Rational;
using series::RSeries;
using series::WPoly;

// Generator forms. Weights: E2,U,V,W -> 2; E4 -> 4; E6 -> 6; Delta -> 12.
enum class GeneratorId { E2, E4, E6, Delta, U, V, W };

int weight(GeneratorId g);

// q-series of E2/E4/E6 to the given r-order (coefficients land on even
// r-exponents; q = r^2).
RSeries eisenstein(GeneratorId kind, long order);

// Fourth powers of the Jacobi theta functions as r-series.
//   U = Theta00^4, V = Theta10^4, W = Theta01^4.
RSeries theta_fourth(GeneratorId kind, long order);

// Delta as an r-series, computed both as (E4^3 - E6^2)/1728 and as the
// eta-product q prod (1-q^n)^24; raises internal error if the two disagree.
RSeries delta(long order);

// Delta^(-l/2) for even l >= 2; starts at r^-l. Every coefficient is
// verified nonnegative (a failure would break the Step-8 inequality chain
// downstream, so it is a hard error).
RSeries delta_inv_pow(long l, long order);

// sigma_k(n), divisor power sum, memoized.
exactnum::Int sigma(int k, long n);

// Homogeneous polynomial in (U, V, W); degree = weight/2.
struct ThetaMonomial {
  long u = 0, v = 0, w = 0;
  Rational coeff;
};

struct ThetaPolynomial {
  std::vector<ThetaMonomial> monomials;
  long degree = 0; // common total degree (homogeneity enforced on expand)

  RSeries expand(long order) const;
  // the S-slash substitution (U,V,W) -> (-U,-W,-V)
  ThetaPolynomial s_transform() const;
  // |P|: absolute values of all coefficients
  ThetaPolynomial abs() const;
  // evaluate at numeric (X,Y,Z); used by the tail majorants
  Rational eval(const Rational& x, const Rational& y, const Rational& z) const;
};

// expansion of phi_S = P(U_S, V_S, W_S) = P(-U, -W, -V)
RSeries phi_s(const ThetaPolynomial& p, long order);

// Monomial basis of M_{k+2}^{<=2}: E2^i E4^j E6^n with 2i+4j+6n = k+2,
// i <= 2, listed by j = 0..(k+2)/4 with i = ((k+2)/2 - 2j) mod 3 and
// n = (k+2-2i-4j)/6.
struct EisensteinMonomial {
  long i = 0, j = 0, n = 0; // exponents of E2, E4, E6
};

std::vector<EisensteinMonomial> eisenstein_monomials(long k_plus_2);

// Element of M_{k+2}^{<=2} as coefficients against eisenstein_monomials.
struct EisensteinPolynomial {
  long k_plus_2 = 0;
  std::vector<Rational> coeffs; // aligned with eisenstein_monomials(k_plus_2)

  RSeries expand(long order) const;
  Rational abs_eval(const Rational& x2, const Rational& x4, const Rational& x6) const;
};

// w^2 * psi_S for psi = Q(E2,E4,E6) in M_{k+2}^{<=2}, assembled from the
// E2-degree split Q = Q0 + E2 Q1 + E2^2 Q2 via
//   w^2 psi_S = Q w^2 + (-12 Q2 E2 - 6 Q1) w + 36 Q2,
// which encodes (E2)_S = E2 - 6/w.
RSeries psi_s_times_w2(const EisensteinPolynomial& q, long order);

// expansion of a single E-monomial
RSeries eisenstein_monomial_series(const EisensteinMonomial& m, long order);

} // namespace fdp::modforms
