#include <doctest.h>

#include <cmath>
#include <limits>

#include "morseforge/matrix.hpp"
#include "support.hpp"

using namespace morseforge;
using testing::Rng;

TEST_CASE("rational literals parse to canonical form") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(to_string(parse_rational("10/-4")) == "-5/2");
  CHECK(to_string(parse_rational("4/2")) == "2");
  CHECK(to_string(make_rational("123456789012345678901234567890", "10")) == "12345678901234567890123456789");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(make_rational("3", "0"), ParseError);
}

TEST_CASE("from_double is exact") {
  CHECK(from_double(0.5) == Rational(1, 2));
  CHECK(from_double(-3.0) == Rational(-3));
  const double third = 1.0 / 3.0;
  const Rational r = from_double(third);
  CHECK(r.get_d() == third);
  CHECK(r != Rational(1, 3));
  CHECK(mpz_sizeinbase(r.get_den().get_mpz_t(), 2) <= 55);
  CHECK_THROWS_AS(from_double(std::numeric_limits<double>::infinity()), ParseError);
  CHECK_THROWS_AS(from_double(std::nan("")), ParseError);
}

TEST_CASE("height is max(|num|, den)") {
  CHECK(height(Rational(-7, 3)) == 7);
  CHECK(height(Rational(2, 9)) == 9);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.rational(9);
    CHECK(determinant(m) == testing::cofactor_det(m));
  }
}

TEST_CASE("inverse times matrix is the identity") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.rational(9);
    if (determinant(m) == 0) continue;
    CHECK(inverse(m) * m == RationalMatrix::identity(n));
    CHECK(m * inverse(m) == RationalMatrix::identity(n));
  }
  RationalMatrix singular(2, 2);
  singular(0, 0) = 1;
  singular(0, 1) = 2;
  singular(1, 0) = 2;
  singular(1, 1) = 4;
  CHECK_THROWS_AS(inverse(singular), DimensionError);
}

TEST_CASE("Sylvester criterion") {
  RationalMatrix h(2, 2);
  h(0, 0) = 3;
  h(0, 1) = -2;
  h(1, 0) = -2;
  h(1, 1) = 2;
  CHECK(leading_principal_minors(h) == std::vector<Rational>{3, 2});
  CHECK(is_positive_definite(h));
  h(1, 1) = 1;
  CHECK(leading_principal_minors(h) == std::vector<Rational>{3, -1});
  CHECK_FALSE(is_positive_definite(h));
}
