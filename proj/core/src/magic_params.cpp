#include <cstdlib>
#include <string>

#include "fdp/magic/params.hpp"
#include "fdp/support/error.hpp"

namespace fdp::magic {

long dimension_cap() {
  if (const char* env = std::getenv("MAGIC_DMAX")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 8) return v;
    raise(ErrorKind::usage, std::string("bad MAGIC_DMAX value: ") + env);
  }
  return kDefaultDimensionCap;
}

MagicParams compute_params(long d, std::optional<long> cap_override) {
  if (d < 8 || d % 8 != 0)
    raise(ErrorKind::usage, "dimension must be a positive multiple of 8");
  long cap = cap_override.value_or(dimension_cap());
  if (d > cap)
    raise(ErrorKind::resource,
          "dimension " + std::to_string(d) + " exceeds cap " + std::to_string(cap) +
              " (override with MAGIC_DMAX)");
  if (d % 24 == 16)
    raise(ErrorKind::check_failed,
          "dimension " + std::to_string(d) +
              " = 16 mod 24 is excluded: the construction exists but its "
              "transform fails the sign conditions");

  MagicParams p;
  p.d = d;
  p.a = 2 + 2 * (d / 24);
  p.l = p.a + 4 * ((d - 4) / 12 - d / 24);
  p.k = 2 - d / 2 + 6 * p.l;
  p.b = p.l / 2 - (d - 4) / 12;
  p.eps = -1;
  if (p.k % 4 != 2) raise(ErrorKind::internal, "weight is not 2 mod 4");
  if (p.b < 1) raise(ErrorKind::internal, "basis dimension must be >= 1");

  if (auto c = cd_table_lookup(d)) {
    p.c = *c;
  } else if (d > 1200) {
    p.c = Rational(p.a - 2);
  } else {
    raise(ErrorKind::internal, "missing spectral threshold for admissible dimension");
  }
  return p;
}

} // namespace fdp::magic
