#include "fdp/exactnum/sturm.hpp"

#include "fdp/support/error.hpp"

namespace fdp::exactnum {

namespace {

struct NeedsFallback {};

// Classic pseudo-remainder loop; returns lc(b)^done * (a mod b) with the
// sign corrected to match the true rational remainder.
IntPoly signed_prem(const IntPoly& a, const IntPoly& b) {
  IntPoly r = a;
  const Int& lb = b.c.back();
  long db = b.degree();
  long done = 0;
  while (!r.is_zero() && r.degree() >= db) {
    long k = r.degree() - db;
    Int lead = r.c.back();
    for (auto& x : r.c) x *= lb;
    for (long i = 0; i <= db; ++i) r.c[k + i] -= lead * b.c[i];
    r.trim();
    ++done;
  }
  if (sgn(lb) < 0 && done % 2 == 1)
    for (auto& x : r.c) x = -x;
  return r;
}

} // namespace

SturmChain SturmChain::build(const RatPoly& p) {
  SturmChain s;
  IntPoly p0 = to_primitive_int(p);
  if (p0.is_zero()) raise(ErrorKind::domain, "Sturm chain of the zero polynomial");
  s.chain.push_back(p0);
  if (p0.degree() == 0) return s;
  IntPoly p1 = to_primitive_int(p.derivative());
  s.chain.push_back(std::move(p1));
  while (s.chain.back().degree() > 0) {
    IntPoly r = signed_prem(s.chain[s.chain.size() - 2], s.chain.back());
    if (r.is_zero()) break;
    for (auto& x : r.c) x = -x;
    r.make_primitive();
    s.chain.push_back(std::move(r));
  }
  return s;
}

int SturmChain::variations_at(const Rational& x) const {
  int var = 0, last = 0;
  for (const auto& q : chain) {
    int sg = q.sign_at(x);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++var;
    last = sg;
  }
  return var;
}

int sturm_count_roots(const RatPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) raise(ErrorKind::domain, "sturm_count_roots: zero polynomial");
  if (!(a < b)) raise(ErrorKind::domain, "sturm_count_roots: empty interval");
  if (p.eval(a) == 0 || p.eval(b) == 0)
    raise(ErrorKind::domain, "sturm_count_roots: endpoint is a root");
  SturmChain s = SturmChain::build(p);
  return s.variations_at(a) - s.variations_at(b);
}

namespace {

int sign_variations(const std::vector<Int>& c) {
  int var = 0, last = 0;
  for (const auto& x : c) {
    int sg = sgn(x);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++var;
    last = sg;
  }
  return var;
}

// In-place Taylor shift by 1 (Ruffini-Horner accumulation).
void taylor_shift_1(std::vector<Int>& a) {
  if (a.size() < 2) return;
  for (size_t i = 0; i + 1 < a.size(); ++i)
    for (size_t j = a.size() - 1; j-- > i;) a[j] += a[j + 1];
}

// Descartes variation bound for roots of q in (0,1):
// variations of (1+x)^deg q(1/(1+x)).
int variations_01(const std::vector<Int>& q) {
  std::vector<Int> r(q.rbegin(), q.rend());
  taylor_shift_1(r);
  return sign_variations(r);
}

// Exact root count of q (integer coefficients, q(0) != 0, q(1) != 0) in the
// open interval (0,1) by Descartes bisection.
int count_roots_01(std::vector<Int> q, int depth) {
  int v = variations_01(q);
  if (v == 0) return 0;
  if (v == 1) return 1;
  if (depth > 200) throw NeedsFallback{};

  size_t n = q.size();
  // lo(x) = q(x/2) * 2^deg covers (0,1/2); hi(x) = lo(x+1) covers (1/2,1).
  std::vector<Int> lo(n);
  for (size_t i = 0; i < n; ++i) lo[i] = q[i] << (unsigned)(n - 1 - i);
  std::vector<Int> hi = lo;
  taylor_shift_1(hi);

  int mid_root = hi.empty() || hi[0] == 0 ? 1 : 0;

  // strip the midpoint root so the sub-calls see nonzero endpoint values
  while (!lo.empty() && lo.back() == 0) lo.pop_back();
  for (;;) { // divide lo by (x-1) while lo(1) == 0
    Int s = 0;
    for (const auto& x : lo) s += x;
    if (s != 0 || lo.size() <= 1) break;
    std::vector<Int> qq(lo.size() - 1);
    Int carry = 0;
    for (size_t i = lo.size(); i-- > 1;) {
      carry += lo[i];
      qq[i - 1] = carry;
    }
    lo = std::move(qq);
  }
  size_t k = 0;
  while (k < hi.size() && hi[k] == 0) ++k;
  if (k > 0) hi.erase(hi.begin(), hi.begin() + k);
  while (!hi.empty() && hi.back() == 0) hi.pop_back();

  return count_roots_01(std::move(lo), depth + 1) + mid_root +
         count_roots_01(std::move(hi), depth + 1);
}

} // namespace

int descartes_count_roots(const RatPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) raise(ErrorKind::domain, "descartes_count_roots: zero polynomial");
  if (!(a < b)) raise(ErrorKind::domain, "descartes_count_roots: empty interval");
  if (p.eval(a) == 0 || p.eval(b) == 0)
    raise(ErrorKind::domain, "descartes_count_roots: endpoint is a root");
  RatPoly q = p.taylor_shift(a).scale_arg(b - a);
  IntPoly qi = to_primitive_int(q);
  try {
    return count_roots_01(qi.c, 0);
  } catch (const NeedsFallback&) {
    return sturm_count_roots(p, a, b);
  }
}

bool poly_positive_on(const RatPoly& p, const Rational& a, const Rational& b,
                      const PositivityOptions& opts) {
  if (!(a < b)) raise(ErrorKind::domain, "poly_positive_on: empty interval");
  if (p.is_zero()) return false;

  // Strip endpoint roots: (x-a) is positive on (a,b); each (x-b) factor
  // divided out flips the sign of the quotient on the interval.
  RatPoly q = p;
  int flip = 1;
  while (q.eval(a) == 0) {
    q = q.divexact(RatPoly(std::vector<Rational>{-a, Rational(1)}));
    if (q.is_zero()) return false;
  }
  while (q.eval(b) == 0) {
    q = q.divexact(RatPoly(std::vector<Rational>{-b, Rational(1)}));
    flip = -flip;
    if (q.is_zero()) return false;
  }
  Rational mid = (a + b) / 2;
  if (!(q.eval(mid) * flip > 0)) return false;
  if (q.degree() <= 0) return true;
  int roots = q.degree() <= opts.sturm_degree_cutoff ? sturm_count_roots(q, a, b)
                                                     : descartes_count_roots(q, a, b);
  return roots == 0;
}

} // namespace fdp::exactnum
