#pragma once

#include <optional>

#include "fdp/exactnum/rational.hpp"

namespace fdp::magic {

using exactnum::Rational;

// Per-dimension parameters of the construction:
//   a = 2 + 2*floor(d/24)                  (minimal norm squared)
//   l = a + 4*(floor((d-4)/12) - floor(d/24))
//   k = 2 - d/2 + 6l                       (weight, k = 2 mod 4)
//   b = l/2 - floor((d-4)/12)              (basis dimension, >= 1)
//   eps = -1                                (Fourier eigenvalue of the odd part)
//   c = spectral threshold from the bundled table.
struct MagicParams {
  long d = 0;
  long a = 0;
  long l = 0;
  long k = 0;
  long b = 0;
  int eps = -1;
  Rational c;

  long theta_monomial_count() const { return k / 2 - l; }   // columns of M_phi
  long eis_monomial_count() const { return (k + 6) / 4; }   // columns of M_psi
};

inline constexpr long kDefaultDimensionCap = 200;

// Reads the MAGIC_DMAX environment override, else the default cap.
long dimension_cap();

// Validates d (multiple of 8, within cap, not 16 mod 24) and fills all
// derived fields. c comes from the bundled table for d <= 1200 and equals
// a-2 beyond.
MagicParams compute_params(long d, std::optional<long> cap_override = std::nullopt);

// Bundled spectral-threshold table, keyed by dimension (multiples of 8 up
// to 1200). Returns nothing for d = 16 mod 24 (no certified construction).
std::optional<Rational> cd_table_lookup(long d);

// All table rows as (d, c) pairs for the CLI and the data file writer.
std::vector<std::pair<long, std::optional<Rational>>> cd_table_rows();

} // namespace fdp::magic
