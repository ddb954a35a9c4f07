#include "fdp/series/rseries.hpp"

#include <algorithm>

#include "fdp/support/error.hpp"

namespace fdp::series {

using exactnum::Int;

const Rational& WPoly::coeff(int wpow) const {
  switch (wpow) {
    case 0: return c0;
    case 1: return c1;
    case 2: return c2;
    default: raise(ErrorKind::domain, "WPoly coefficient index out of range");
  }
}

WPoly WPoly::operator*(const WPoly& o) const {
  int d = degree(), e = o.degree();
  if (d < 0 || e < 0) return WPoly();
  if (d + e > 2)
    raise(ErrorKind::domain, "w-degree overflow in WPoly multiplication");
  WPoly r;
  r.c0 = c0 * o.c0;
  r.c1 = c0 * o.c1 + c1 * o.c0;
  r.c2 = c0 * o.c2 + c1 * o.c1 + c2 * o.c0;
  return r;
}

RSeries::RSeries(long start, long order) : start_(start), order_(order) {
  if (order >= start) c_.assign(order - start + 1, WPoly());
}

RSeries RSeries::constant(const Rational& v, long order) {
  RSeries s(0, order);
  s.set(0, WPoly(v));
  return s;
}

RSeries RSeries::monomial(const WPoly& c, long n, long order) {
  RSeries s(std::min(n, 0L), order);
  s.set(n, c);
  return s;
}

const WPoly& RSeries::at(long n) const {
  if (!known(n))
    raise(ErrorKind::domain, "RSeries read outside truncation window");
  return c_[n - start_];
}

void RSeries::set(long n, WPoly v) {
  if (!known(n))
    raise(ErrorKind::domain, "RSeries write outside truncation window");
  c_[n - start_] = std::move(v);
}

void RSeries::add_to(long n, const WPoly& v) {
  if (!known(n))
    raise(ErrorKind::domain, "RSeries write outside truncation window");
  c_[n - start_] = c_[n - start_] + v;
}

RSeries RSeries::operator+(const RSeries& o) const {
  long s = std::min(start_, o.start_);
  long m = std::min(order_, o.order_);
  if (m < s) raise(ErrorKind::domain, "RSeries addition with empty overlap");
  RSeries r(s, m);
  for (long n = s; n <= m; ++n) {
    WPoly v;
    if (known(n)) v = v + at(n);
    if (o.known(n)) v = v + o.at(n);
    r.set(n, std::move(v));
  }
  return r;
}

RSeries RSeries::operator-(const RSeries& o) const { return *this + (-o); }

RSeries RSeries::operator-() const {
  RSeries r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

RSeries RSeries::operator*(const Rational& s) const {
  RSeries r = *this;
  for (auto& x : r.c_) x = x * s;
  return r;
}

RSeries RSeries::operator*(const RSeries& o) const {
  // sound truncation: a known to order A with start sa, b to order B with
  // start sb; the product coefficient at n is fully known iff every split
  // n = i + j with i >= sa, j >= sb has i <= A and j <= B, i.e.
  // n <= min(A + sb, B + sa).
  long s = start_ + o.start_;
  long m = std::min(order_ + o.start_, o.order_ + start_);
  if (m < s) raise(ErrorKind::domain, "RSeries product with empty truncation window");
  RSeries r(s, m);
  for (long i = start_; i <= order_; ++i) {
    const WPoly& a = at(i);
    if (a.is_zero()) continue;
    long jhi = std::min(o.order_, m - i);
    for (long j = o.start_; j <= jhi; ++j) {
      const WPoly& b = o.at(j);
      if (b.is_zero()) continue;
      r.add_to(i + j, a * b);
    }
  }
  return r;
}

RSeries RSeries::truncated(long m) const {
  if (m > order_) raise(ErrorKind::domain, "truncated() cannot extend a series");
  RSeries r(start_, m);
  for (long n = start_; n <= m; ++n) r.set(n, at(n));
  return r;
}

RSeries RSeries::shifted(long k) const {
  RSeries r = *this;
  r.start_ += k;
  r.order_ += k;
  return r;
}

RSeries RSeries::inverse() const { return inverse_by_recurrence(*this); }

RSeries inverse_by_recurrence(const RSeries& a) {
  long s = a.start();
  if (a.order() < s) raise(ErrorKind::domain, "inverse of empty series");
  const WPoly& lead = a.at(s);
  if (lead.degree() != 0)
    raise(ErrorKind::domain, "series inverse needs a w-free unit leading coefficient");
  const Rational& u = lead.c0;
  long rel = a.order() - s; // relative precision carried through
  RSeries inv(-s, -s + rel);
  inv.set(-s, WPoly(1 / u));
  for (long k = 1; k <= rel; ++k) {
    // coefficient of r^(-s+k): solve sum_{j=0..k} a_{s+j} * inv_{-s+k-j} = 0
    WPoly acc;
    for (long j = 1; j <= k; ++j) acc = acc + a.at(s + j) * inv.at(-s + k - j);
    inv.set(-s + k, acc * (Rational(-1) / u));
  }
  return inv;
}

RSeries RSeries::power(long e) const {
  if (e == 0) {
    // relative precision of the inputs bounds the guaranteed order
    return RSeries::constant(Rational(1), order_ - start_);
  }
  const RSeries base = e > 0 ? *this : inverse();
  unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
  RSeries acc = base;
  --n;
  RSeries sq = base;
  while (n > 0) {
    if (n & 1) acc = acc * sq;
    sq = n > 1 ? sq * sq : sq;
    n >>= 1;
  }
  return acc;
}

const Rational& RSeries::coeff(int wpow, long n) const { return at(n).coeff(wpow); }

WPoly RSeries::at_or_zero(long n) const {
  if (n < start_) return WPoly();
  return at(n);
}

bool RSeries::is_q_series() const {
  for (long n = start_; n <= order_; ++n) {
    if (((n % 2) + 2) % 2 == 1 && !at(n).is_zero()) return false;
  }
  return true;
}

bool RSeries::is_w_free() const {
  for (const auto& x : c_)
    if (x.c1 != 0 || x.c2 != 0) return false;
  return true;
}

RatPoly RSeries::w_component_poly(int wpow) const {
  if (start_ < 0)
    raise(ErrorKind::domain, "w_component_poly needs a nonnegative start");
  std::vector<Rational> v(order_ + 1, Rational(0));
  for (long n = start_; n <= order_; ++n) v[n] = at(n).coeff(wpow);
  return RatPoly(std::move(v));
}

RSeries series_inv_pow(const RSeries& a, long n) {
  if (n < 0) raise(ErrorKind::domain, "series_inv_pow: n must be >= 0");
  if (n == 0) return RSeries::constant(Rational(1), a.order() - a.start());
  return a.power(-n);
}

} // namespace fdp::series
