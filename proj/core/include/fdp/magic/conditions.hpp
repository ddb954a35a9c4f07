#pragma once

#include <optional>
#include <string>

#include "fdp/exactnum/sturm.hpp"
#include "fdp/magic/pipeline.hpp"

namespace fdp::magic {

// Outcome of the positivity conditions. `failed` names the first condition
// that came back false under the final ladder (empty if all passed).
struct ConditionReport {
  bool i = false, ii = false, iii = false, iv = false, v = false, vi = false, vii = false;
  std::string failed;

  bool all() const { return i && ii && iii && iv && v && vi && vii; }
};

struct ConditionOptions {
  bool short_circuit = true; // stop at the first failing condition
  exactnum::PositivityOptions positivity;
  // conditions already proven at a lower rung stay proven; escalation
  // re-checks only what failed
  ConditionReport prior;
};

// Evaluates conditions (I)-(VII) for the assembled series at truncation
// order N under the given precision ladder. Pure rational arithmetic
// throughout; each `true` is a proof, each `false` may mean either falsity
// or insufficient precision (callers escalate the ladder to distinguish).
ConditionReport check_conditions(const MagicSeries& s, long n_trunc,
                                 const exactnum::PrecisionLadder& ladder,
                                 const ConditionOptions& opts = {});

// d=48 sign analysis: runs the Step-8 style machinery on the other sign
// combination, divides the assembled bound numerator by (s-6)(s-8) after an
// exact-divisibility check and Sturm-verifies positivity of the quotient on
// (0,10). True certifies that the function is negative exactly on the
// squared-radius band (6,8) within (0,10).
bool check_sign_48(const MagicSeries& s, long n_trunc, const exactnum::PrecisionLadder& ladder,
                   const ConditionOptions& opts = {});

// Lower-bound rational function of the Step-8 machinery (exposed so tests
// can cross-check it against the float-mode evaluation).
struct RationalBound {
  exactnum::RatPoly num;
  exactnum::RatPoly den;
};

RationalBound assemble_hhat_lower_bound(const MagicSeries& s, long n_trunc,
                                        const exactnum::PrecisionLadder& ladder);

// Last sign change of the certified transform-side lower bound on (0, a-2),
// located by exact root counting, refined to 4 decimal digits and rounded
// up (an approximation from the right). Returns 0 when the bound stays
// positive; reproduces the bundled spectral-threshold table.
Rational estimate_last_sign_change(const MagicSeries& s, long n_trunc);
Rational estimate_last_sign_change(long d);

} // namespace fdp::magic
