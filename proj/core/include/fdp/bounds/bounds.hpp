#pragma once

#include <string>
#include <vector>

#include "fdp/exactnum/rational.hpp"
#include "fdp/magic/evaluate.hpp"

namespace fdp::bounds {

using exactnum::Int;
using exactnum::Rational;
using support::MpFloat;

// Sphere-packing density with an exact symbolic core (rational multiple of
// an integer power of pi) where one exists, plus a high-precision decimal.
struct DensityValue {
  bool has_exact = false;
  Rational coeff;   // exact part: coeff * pi^pi_power
  long pi_power = 0;
  MpFloat decimal;

  static DensityValue exact(const Rational& coeff, long pi_power);
  static DensityValue approximate(const MpFloat& v);

  DensityValue scaled(const Rational& f) const; // multiply by a rational
  bool same_exact(const DensityValue& o) const; // symbolic equality
};

// vol(B_d) as an exact rational multiple of pi^floor(d/2).
DensityValue ball_volume(long d);

// vol(B_d) (sqrt(a_d)/2)^d, the density of an extremal even unimodular
// lattice packing scaled to unit spheres.
DensityValue extremal_density(long d);

// Checks vol(B_d/2) F(0)/F_hat(0) = extremal_density(d) to relative 1e-6,
// with F(x) = H(sqrt(a) x). Uses the float evaluator at s = 0.
bool lp_ratio_check(const magic::Evaluator& ev);
bool lp_ratio_check(long d);

// Theta-series shell data of a lattice.
struct LatticeShellData {
  long d = 0;
  Rational covolume = Rational(1);
  std::vector<std::pair<long, Int>> shells; // (norm^2, count), increasing

  std::string to_json() const;
  static LatticeShellData from_json(const std::string& text);
};

// |sum_n count_n H(.) + H(0) - covol^-1 (sum dual + H_hat(0))| over the
// truncated shells; collapses to |H(0) - covol^-1 H_hat(0)| plus quadrature
// noise for extremal self-dual data because every shell sits on a zero.
MpFloat poisson_residual(const LatticeShellData& shells, const LatticeShellData& dual_shells,
                         const magic::Evaluator& ev);

// two-sided cluster bounds n Delta_d / (beta+lambda)^d <= . <= n Delta_d / lambda^d
std::pair<DensityValue, DensityValue> cluster_bounds(long n_cluster, const DensityValue& delta_d,
                                                     const Rational& beta,
                                                     const Rational& lambda, long d);

// 1 + kiss_d <= ((2+lambda)^d / Delta_d) * ratio * vol(B_d/2), lambda >= 4
DensityValue kissing_bound(long d, const Rational& lambda, const Rational& ratio,
                           const DensityValue& delta_d);

// Shell data generated from theta series: E8 (theta = E4) and the Leech
// lattice (theta = E4^3 - 720 Delta).
LatticeShellData e8_shells(long max_norm);
LatticeShellData leech_shells(long max_norm);

} // namespace fdp::bounds
