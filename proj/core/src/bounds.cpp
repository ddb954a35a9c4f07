#include <algorithm>

#include "fdp/bounds/bounds.hpp"
#include "fdp/magic/certificate.hpp"
#include "fdp/modforms/modforms.hpp"
#include "fdp/support/error.hpp"

#include "json.hpp"

namespace fdp::bounds {

using exactnum::pow_rational;

namespace {

MpFloat exact_to_float(const Rational& coeff, long pi_power) {
  return MpFloat(coeff) * MpFloat::pow_si(MpFloat::pi(), pi_power);
}

Int double_factorial(long n) {
  Int r = 1;
  for (long k = n; k >= 2; k -= 2) r *= k;
  return r;
}

} // namespace

DensityValue DensityValue::exact(const Rational& coeff, long pi_power) {
  DensityValue v;
  v.has_exact = true;
  v.coeff = coeff;
  v.pi_power = pi_power;
  v.decimal = exact_to_float(coeff, pi_power);
  return v;
}

DensityValue DensityValue::approximate(const MpFloat& x) {
  DensityValue v;
  v.decimal = x;
  return v;
}

DensityValue DensityValue::scaled(const Rational& f) const {
  DensityValue v = *this;
  if (v.has_exact) {
    v.coeff *= f;
    v.decimal = exact_to_float(v.coeff, v.pi_power);
  } else {
    v.decimal = v.decimal * MpFloat(f);
  }
  return v;
}

bool DensityValue::same_exact(const DensityValue& o) const {
  if (!has_exact || !o.has_exact) return false;
  if (coeff == 0 && o.coeff == 0) return true;
  return coeff == o.coeff && pi_power == o.pi_power;
}

DensityValue ball_volume(long d) {
  if (d < 1) raise(ErrorKind::domain, "ball_volume: d must be >= 1");
  if (d % 2 == 0) {
    Int fact = 1;
    for (long k = 2; k <= d / 2; ++k) fact *= k;
    return DensityValue::exact(exactnum::make_rational(Int(1), fact), d / 2);
  }
  // odd d: 2^((d+1)/2) pi^((d-1)/2) / d!!
  return DensityValue::exact(
      exactnum::make_rational(exactnum::pow_int(Int(2), (d + 1) / 2), double_factorial(d)),
      (d - 1) / 2);
}

DensityValue extremal_density(long d) {
  magic::MagicParams p = magic::compute_params(d);
  // (sqrt(a)/2)^d = a^(d/2) / 2^d for even d
  Rational scale = exactnum::make_rational(exactnum::pow_int(Int(p.a), d / 2),
                                           exactnum::pow_int(Int(2), d));
  return ball_volume(d).scaled(scale);
}

bool lp_ratio_check(const magic::Evaluator& ev) {
  const magic::MagicParams& p = ev.params();
  MpFloat h0 = ev.value(magic::Side::h, Rational(0));
  MpFloat hh0 = ev.value(magic::Side::h_hat, Rational(0));
  if (!(hh0 > MpFloat(0L))) return false;
  // F(x) = H(sqrt(a) x): F(0)/F_hat(0) = a^(d/2) H(0)/H_hat(0)
  MpFloat ratio = MpFloat(pow_rational(Rational(p.a), p.d / 2)) * h0 / hh0;
  DensityValue half_ball =
      ball_volume(p.d).scaled(exactnum::make_rational(Int(1), exactnum::pow_int(Int(2), p.d)));
  MpFloat bound = half_ball.decimal * ratio;
  MpFloat target = extremal_density(p.d).decimal;
  MpFloat rel = (bound - target).abs() / target.abs();
  return rel.to_double() <= 1e-6;
}

bool lp_ratio_check(long d) {
  magic::MagicParams p = magic::compute_params(d);
  magic::PhiBasis phib = magic::phi_basis(p);
  magic::PsiBasis psib = magic::psi_basis(p);
  magic::CVectors vec = magic::solve_c_vectors(phib, psib, p);
  magic::Evaluator ev(p, vec);
  return lp_ratio_check(ev);
}

std::string LatticeShellData::to_json() const {
  nlohmann::ordered_json j;
  j["d"] = d;
  j["covolume"] = covolume.get_str();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [norm, count] : shells)
    arr.push_back({norm, count.get_str()});
  j["shells"] = arr;
  return j.dump(2) + "\n";
}

LatticeShellData LatticeShellData::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  LatticeShellData out;
  out.d = j.at("d").get<long>();
  out.covolume = exactnum::parse_rational(j.at("covolume").get<std::string>());
  for (const auto& e : j.at("shells")) {
    long norm = e.at(0).get<long>();
    Int count;
    if (e.at(1).is_string()) count = Int(e.at(1).get<std::string>());
    else count = Int(e.at(1).get<long>());
    out.shells.emplace_back(norm, count);
  }
  std::sort(out.shells.begin(), out.shells.end());
  return out;
}

MpFloat poisson_residual(const LatticeShellData& shells, const LatticeShellData& dual_shells,
                         const magic::Evaluator& ev) {
  const magic::MagicParams& p = ev.params();
  auto side_sum = [&](const LatticeShellData& data, magic::Side side) {
    MpFloat acc = ev.value(side, Rational(0)); // the origin shell
    for (const auto& [norm, count] : data.shells) {
      if (norm % 2 != 0)
        raise(ErrorKind::domain, "poisson_residual: odd norm in shell data");
      if (norm < p.a)
        raise(ErrorKind::domain, "poisson_residual: shell below the minimal norm");
      acc = acc + MpFloat(Rational(count)) * ev.value(side, Rational(norm));
    }
    return acc;
  };
  MpFloat lhs = side_sum(shells, magic::Side::h);
  MpFloat rhs = side_sum(dual_shells, magic::Side::h_hat) / MpFloat(shells.covolume);
  return (lhs - rhs).abs();
}

std::pair<DensityValue, DensityValue> cluster_bounds(long n_cluster, const DensityValue& delta_d,
                                                     const Rational& beta,
                                                     const Rational& lambda, long d) {
  if (n_cluster < 1) raise(ErrorKind::domain, "cluster_bounds: n_cluster must be >= 1");
  if (!(lambda > beta && beta >= 1))
    raise(ErrorKind::domain, "cluster_bounds: need lambda > beta >= 1");
  Rational lo = Rational(n_cluster) / pow_rational(beta + lambda, d);
  Rational hi = Rational(n_cluster) / pow_rational(lambda, d);
  return {delta_d.scaled(lo), delta_d.scaled(hi)};
}

DensityValue kissing_bound(long d, const Rational& lambda, const Rational& ratio,
                           const DensityValue& delta_d) {
  if (!(lambda >= 4)) raise(ErrorKind::domain, "kissing_bound: lambda must be >= 4");
  DensityValue half_ball =
      ball_volume(d).scaled(exactnum::make_rational(Int(1), exactnum::pow_int(Int(2), d)));
  Rational front = pow_rational(lambda + 2, d) * ratio;
  if (delta_d.has_exact && delta_d.coeff != 0) {
    return DensityValue::exact(half_ball.coeff * front / delta_d.coeff,
                               half_ball.pi_power - delta_d.pi_power);
  }
  return DensityValue::approximate(half_ball.decimal * MpFloat(front) / delta_d.decimal);
}

namespace {

LatticeShellData shells_from_theta(long d, const series::RSeries& theta, long max_norm) {
  LatticeShellData out;
  out.d = d;
  out.covolume = Rational(1);
  for (long n = 2; n <= max_norm; n += 2) {
    Rational c = theta.at_or_zero(n).c0; // q-exponent n/2 lives at r^n
    if (c == 0) continue;
    if (c.get_den() != 1) raise(ErrorKind::internal, "theta coefficient not integral");
    out.shells.emplace_back(n, Int(c.get_num()));
  }
  return out;
}

} // namespace

LatticeShellData e8_shells(long max_norm) {
  return shells_from_theta(8, modforms::eisenstein(modforms::GeneratorId::E4, max_norm),
                           max_norm);
}

LatticeShellData leech_shells(long max_norm) {
  series::RSeries e4 = modforms::eisenstein(modforms::GeneratorId::E4, max_norm);
  series::RSeries delta = modforms::delta(max_norm);
  series::RSeries theta = (e4 * e4) * e4 - delta * Rational(720);
  return shells_from_theta(24, theta, max_norm);
}

} // namespace fdp::bounds
