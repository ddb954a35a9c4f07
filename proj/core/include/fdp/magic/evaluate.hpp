#pragma once

#include <memory>

#include "fdp/exactnum/enclosure.hpp"
#include "fdp/magic/pipeline.hpp"
#include "fdp/support/mpfloat.hpp"

namespace fdp::magic {

using support::MpFloat;

enum class Side { h, h_hat };

// Non-certified high-precision evaluator of H and H-hat at squared radius s
// (termwise closed forms for the t >= 1 leg, tanh-sinh quadrature for the
// modular-inverted leg), plus rational enclosures in the convergence region.
class Evaluator {
 public:
  // order_hint: truncation for the evaluation series (independent of the
  // certification order; defaults scale with the target precision).
  Evaluator(const MagicParams& p, const CVectors& vec, long order_hint = 0);

  const MagicParams& params() const { return params_; }

  // value at squared radius s. Float mode: s must not be an even integer
  // in (0, a-2]; even integers >= a evaluate to exact zero and s = 0 to the
  // removable-singularity limit.
  MpFloat value(Side side, const exactnum::Rational& s) const;

  // H(0) = H-hat(0) = pi/4 * [w r^0]((-w^2 psi_S) Delta^(-l/2)); the exact
  // rational factor is exposed for identity checks.
  exactnum::Rational h0_over_pi() const;

  // the meromorphic extension of pi * H/sin^2 (resp. H-hat), for bound
  // cross-checks; same domain restrictions as value()
  MpFloat extension_over_sin2(Side side, const exactnum::Rational& s) const;

  // certified enclosure; requires s in the convergence region (s > l for H,
  // s > a-2 for H-hat) where the representation converges absolutely
  exactnum::RationalInterval value_certified(Side side, const exactnum::Rational& s,
                                             int digits) const;

  // Float-mode bisection for the last sign change of s -> H-hat(sqrt s)
  // itself on (0, a-2); diagnostic companion to the certified-bound
  // estimate (which sits slightly to its right by construction).
  exactnum::Rational last_sign_change_float() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  MagicParams params_;
};

} // namespace fdp::magic
