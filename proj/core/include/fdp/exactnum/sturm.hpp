#pragma once

#include "fdp/exactnum/ratpoly.hpp"

namespace fdp::exactnum {

// Signed Euclidean remainder sequence of (p, p'). Elements are primitive
// integer polynomials; each remainder is negated and divided by its integer
// content, which preserves the Sturm sign-variation property and keeps
// coefficient growth in check on high-degree inputs.
struct SturmChain {
  std::vector<IntPoly> chain;

  static SturmChain build(const RatPoly& p);
  // Sign variations of the chain at x.
  int variations_at(const Rational& x) const;
};

// Exact number of distinct real roots of p in the open interval (a,b).
// Preconditions: p nonzero, a < b, p(a) != 0 and p(b) != 0 (callers must
// nudge endpoints otherwise; violating this raises a domain error).
int sturm_count_roots(const RatPoly& p, const Rational& a, const Rational& b);

// Root-counting engine selection for poly_positive_on. Sturm chains are used
// up to `sturm_degree_cutoff`; beyond that a Descartes/bisection count (also
// exact) takes over, since remainder sequences on degree-many-hundreds inputs
// are far slower than Taylor shifts.
struct PositivityOptions {
  long sturm_degree_cutoff = 160;
};

// Exact count of distinct roots in (a,b) by Descartes' rule with interval
// bisection. Same contract as sturm_count_roots.
int descartes_count_roots(const RatPoly& p, const Rational& a, const Rational& b);

// True iff p(x) > 0 for every x in the open interval (a,b). Endpoint roots
// are divided out (with sign bookkeeping for the right endpoint factor), then
// the interval is certified root-free and the midpoint sign checked.
bool poly_positive_on(const RatPoly& p, const Rational& a, const Rational& b,
                      const PositivityOptions& opts = {});

} // namespace fdp::exactnum
