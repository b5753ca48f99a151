#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace morseforge {

/// Exact rational number, always in lowest terms with positive denominator.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes disagree (dimension, arity, index out of range).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a mathematical hypothesis of the construction.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (JSON, rational literals, CLI vectors).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses "p", "-p" or "p/q" with decimal integers. The result is canonicalized.
Rational parse_rational(std::string_view text);

/// Builds num/den from decimal integer strings; den must be nonzero.
Rational make_rational(std::string_view num, std::string_view den);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

inline std::string numerator_string(const Rational& r) { return r.get_num().get_str(); }
inline std::string denominator_string(const Rational& r) { return r.get_den().get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Exact conversion of a finite double.
Rational from_double(double value);

/// max(|num|, den)
mpz_class height(const Rational& r);

}  // namespace morseforge
