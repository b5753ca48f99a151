#include "morseforge/rational.hpp"

#include <cmath>

namespace morseforge {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_decimal_integer(s)) {
    throw ParseError("not a decimal integer: '" + std::string(s) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational make_rational(std::string_view num, std::string_view den) {
  mpz_class n = parse_integer(trim(num));
  mpz_class d = parse_integer(trim(den));
  if (d == 0) throw ParseError("zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return make_rational(text, "1");
  return make_rational(text.substr(0, slash), text.substr(slash + 1));
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational from_double(double value) {
  if (!std::isfinite(value)) throw ParseError("non-finite value has no rational form");
  // mpq_set_d is exact for finite doubles.
  return Rational(value);
}

mpz_class height(const Rational& r) {
  mpz_class n = abs(r.get_num());
  return n > r.get_den() ? n : mpz_class(r.get_den());
}

}  // namespace morseforge
