#pragma once

#include <optional>
#include <string>

#include "fdp/magic/conditions.hpp"
#include "fdp/magic/pipeline.hpp"

namespace fdp::magic {

// The verified evidence package: parameters, solved integer vectors,
// truncation order, the precision ladder that sufficed, and the outcome of
// every condition. Serialization is deterministic (fixed key order, exact
// integer/rational rendering), so identical inputs give identical bytes.
struct MagicCertificate {
  MagicParams params;
  CVectors vec;
  long n_trunc = 0;
  exactnum::PrecisionLadder ladder;
  ConditionReport checks;
  std::optional<bool> sign48;
  TailMode tail_mode = kDefaultTailMode;
  double runtime_secs = 0.0;

  bool valid() const { return checks.all() && (!sign48.has_value() || *sign48); }
  std::string to_json() const;
};

struct VerifyOptions {
  TailMode tail_mode = kDefaultTailMode;
  std::optional<exactnum::PrecisionLadder> ladder; // start rung; escalates on failure
  bool record_runtime = false; // keep certificates byte-reproducible by default
  std::optional<long> dimension_cap;
};

// Runs the full pipeline: parameters, bases, vector solve, truncation
// choice, conditions (I)-(VII) with automatic ladder escalation, and for
// d = 48 the extra sign analysis. Raises check_failed (with the failing
// condition named) if the ladder is exhausted without a proof.
MagicCertificate verify_magic(long d, const VerifyOptions& opts = {});

} // namespace fdp::magic
