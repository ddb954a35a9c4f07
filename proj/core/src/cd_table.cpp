#include <array>
#include <optional>
#include <vector>

#include "fdp/magic/params.hpp"
#include "fdp/support/error.hpp"

namespace fdp::magic {

namespace {

// Spectral thresholds c_d for d = 8, 16, 24, ..., 1200 (read left to right);
// "inf" marks the dimensions 16 mod 24 that have no certified construction.
// From d = 536 onward the value is a_d - 2. Shipped alongside the binary as
// data/cnumbers.tsv.
constexpr const char* kCd[150] = {
    "0",      "inf",    "0",      "1.5880", "inf",    "0",      "3.5850", "inf",
    "1.4710", "5.5790", "inf",    "3.3760", "7.5720", "inf",    "5.1550", "9.5630",
    "inf",    "5.4650", "11.554", "inf",    "7.4160", "13.543", "inf",    "9.3400",
    "15.530", "inf",    "11.214", "17.514", "inf",    "11.462", "19.495", "inf",
    "13.429", "21.469", "inf",    "15.384", "23.426", "inf",    "17.323", "23.537",
    "inf",    "19.234", "25.533", "inf",    "19.458", "27.530", "inf",    "21.433",
    "29.558", "inf",    "23.403", "31.519", "inf",    "25.358", "33.515", "inf",
    "27.305", "37.454", "inf",    "29.244", "39.891", "inf",    "31.483", "42.000",
    "inf",    "39.277", "44",     "inf",    "46",     "46",     "inf",    "48",
    "48",     "inf",    "50",     "50",     "inf",    "52",     "52",     "inf",
    "54",     "54",     "inf",    "56",     "56",     "inf",    "58",     "58",
    "inf",    "60",     "60",     "inf",    "62",     "62",     "inf",    "64",
    "64",     "inf",    "66",     "66",     "inf",    "68",     "68",     "inf",
    "70",     "70",     "inf",    "72",     "72",     "inf",    "74",     "74",
    "inf",    "76",     "76",     "inf",    "78",     "78",     "inf",    "80",
    "80",     "inf",    "82",     "82",     "inf",    "84",     "84",     "inf",
    "86",     "86",     "inf",    "88",     "88",     "inf",    "90",     "90",
    "inf",    "92",     "92",     "inf",    "94",     "94",     "inf",    "96",
    "96",     "inf",    "98",     "98",     "inf",    "100",
};

} // namespace

std::optional<Rational> cd_table_lookup(long d) {
  if (d < 8 || d % 8 != 0 || d > 1200) return std::nullopt;
  const char* s = kCd[d / 8 - 1];
  if (std::string(s) == "inf") return std::nullopt;
  return exactnum::parse_rational(s);
}

std::vector<std::pair<long, std::optional<Rational>>> cd_table_rows() {
  std::vector<std::pair<long, std::optional<Rational>>> out;
  for (long d = 8; d <= 1200; d += 8) out.emplace_back(d, cd_table_lookup(d));
  return out;
}

} // namespace fdp::magic
