#include "fdp/exactnum/rational.hpp"

#include <cctype>

#include "fdp/support/error.hpp"

namespace fdp::exactnum {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) raise(ErrorKind::usage, "empty rational literal");

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos)
      raise(ErrorKind::usage, "rational literal mixes '.' and '/': " + text);
    std::string intpart = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty()) frac = "0";
    for (char c : frac)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        raise(ErrorKind::usage, "bad decimal literal: " + text);
    bool neg = !intpart.empty() && intpart[0] == '-';
    if (neg || (!intpart.empty() && intpart[0] == '+')) intpart = intpart.substr(1);
    if (intpart.empty()) intpart = "0";
    Int num, den = 1, f;
    if (mpz_set_str(num.get_mpz_t(), intpart.c_str(), 10) != 0)
      raise(ErrorKind::usage, "bad rational literal: " + text);
    if (mpz_set_str(f.get_mpz_t(), frac.c_str(), 10) != 0)
      raise(ErrorKind::usage, "bad rational literal: " + text);
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational r = make_rational(num * den + f, den);
    if (neg) r = -r;
    return r;
  }

  Rational r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    raise(ErrorKind::usage, "bad rational literal: " + text);
  if (r.get_den() == 0) raise(ErrorKind::usage, "zero denominator: " + text);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_decimal_string(const Rational& r, int digits) {
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Int num = r.get_num() * scale;
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), r.get_den().get_mpz_t());
  bool neg = sgn(q) < 0;
  Int a = abs(q);
  std::string ds = a.get_str();
  if ((int)ds.size() <= digits) ds = std::string(digits + 1 - ds.size(), '0') + ds;
  std::string out = ds.substr(0, ds.size() - digits);
  if (digits > 0) out += "." + ds.substr(ds.size() - digits);
  if (neg && !(a == 0)) out = "-" + out;
  return out;
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational pow_rational(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base == 0 && e < 0) raise(ErrorKind::domain, "0 to a negative power");
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational r = make_rational(pow_int(base.get_num(), a), pow_int(base.get_den(), a));
  if (e < 0) r = 1 / r;
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floor_rational(const Rational& r) { return floor_div(r.get_num(), r.get_den()); }

Int ceil_rational(const Rational& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm_int(const Int& a, const Int& b) {
  Int g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

} // namespace fdp::exactnum
