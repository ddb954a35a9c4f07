#include "fdp/exactnum/ratpoly.hpp"

#include <sstream>

#include "fdp/support/error.hpp"

namespace fdp::exactnum {

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::constant(const Rational& v) {
  RatPoly p;
  if (v != 0) p.c_ = {v};
  return p;
}

RatPoly RatPoly::monomial(const Rational& v, size_t k) {
  RatPoly p;
  if (v != 0) {
    p.c_.assign(k + 1, Rational(0));
    p.c_[k] = v;
  }
  return p;
}

const Rational& RatPoly::leading() const {
  if (c_.empty()) raise(ErrorKind::internal, "leading() on zero polynomial");
  return c_.back();
}

RatPoly RatPoly::operator-() const {
  RatPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (-o); }

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (is_zero() || o.is_zero()) return RatPoly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const Rational& s) const {
  if (s == 0) return RatPoly();
  RatPoly r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

Rational RatPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return RatPoly();
  std::vector<Rational> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational((long)i);
  return RatPoly(std::move(r));
}

void RatPoly::divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  if (b.is_zero()) raise(ErrorKind::domain, "polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  std::vector<Rational> quo;
  long db = b.degree();
  if (a.degree() >= db) quo.assign(a.degree() - db + 1, Rational(0));
  while ((long)rem.size() - 1 >= db && !rem.empty()) {
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if ((long)rem.size() - 1 < db) break;
    size_t k = rem.size() - 1 - db;
    Rational f = rem.back() / b.c_.back();
    quo[k] = f;
    for (long i = 0; i <= db; ++i) rem[k + i] -= f * b.c_[i];
    rem.pop_back();
  }
  q = RatPoly(std::move(quo));
  r = RatPoly(std::move(rem));
}

RatPoly RatPoly::divexact(const RatPoly& b) const {
  RatPoly q, r;
  divmod(*this, b, q, r);
  if (!r.is_zero()) raise(ErrorKind::internal, "divexact: nonzero remainder");
  return q;
}

RatPoly RatPoly::gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  while (!y.is_zero()) {
    RatPoly q, r;
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  if (!x.is_zero()) x = x * (1 / x.leading());
  return x;
}

RatPoly RatPoly::taylor_shift(const Rational& a) const {
  // Horner form: p(x+a) built from the top coefficient down.
  RatPoly res;
  RatPoly xa = RatPoly(std::vector<Rational>{a, Rational(1)});
  for (size_t i = c_.size(); i-- > 0;) res = res * xa + RatPoly::constant(c_[i]);
  return res;
}

RatPoly RatPoly::scale_arg(const Rational& s) const {
  RatPoly r = *this;
  Rational f(1);
  for (size_t i = 0; i < r.c_.size(); ++i) {
    r.c_[i] *= f;
    f *= s;
  }
  r.trim();
  return r;
}

RatPoly RatPoly::reverse() const {
  std::vector<Rational> r(c_.rbegin(), c_.rend());
  return RatPoly(std::move(r));
}

std::string RatPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << (sgn(c_[i]) >= 0 ? " + " : " - ");
    else if (sgn(c_[i]) < 0) os << "-";
    Rational a = abs(c_[i]);
    if (a != 1 || i == 0) os << a.get_str();
    if (i >= 1) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

void IntPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

void IntPoly::make_primitive() {
  trim();
  if (c.empty()) return;
  Int g = 0;
  for (const auto& x : c) g = gcd_int(g, x);
  if (g > 1)
    for (auto& x : c) x /= g;
}

int IntPoly::sign_at(const Rational& x) const {
  // Evaluate p(u/v) * v^deg by integer Horner; only the sign is needed.
  if (c.empty()) return 0;
  const Int& u = x.get_num();
  const Int& v = x.get_den();
  Int acc = c.back();
  Int vp = 1;
  for (size_t i = c.size() - 1; i-- > 0;) {
    vp *= v;
    acc = acc * u + c[i] * vp;
  }
  return sgn(acc);
}

int IntPoly::sign_at_int(const Int& x) const {
  if (c.empty()) return 0;
  Int acc = c.back();
  for (size_t i = c.size() - 1; i-- > 0;) acc = acc * x + c[i];
  return sgn(acc);
}

IntPoly to_primitive_int(const RatPoly& p) {
  IntPoly out;
  if (p.is_zero()) return out;
  Int den = 1;
  for (const auto& r : p.coeffs()) den = lcm_int(den, r.get_den());
  out.c.reserve(p.coeffs().size());
  for (const auto& r : p.coeffs()) out.c.push_back(r.get_num() * (den / r.get_den()));
  out.make_primitive();
  return out;
}

} // namespace fdp::exactnum
