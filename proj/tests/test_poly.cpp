#include <doctest.h>

#include <cmath>

#include "morseforge/float_eval.hpp"
#include "morseforge/poly.hpp"
#include "support.hpp"

using namespace morseforge;
using testing::Rng;

namespace {

MultiPoly x1() { return MultiPoly::univariate({0, 1}); }
MultiPoly uni(std::initializer_list<Rational> c) { return MultiPoly::univariate(c); }

}  // namespace

TEST_CASE("terms are kept in descending graded-lex order") {
  const MultiPoly p(2, {Term{{0, 1}, 1}, Term{{2, 0}, 1}, Term{{1, 1}, 1}, Term{{0, 0}, 5}, Term{{1, 0}, 1}});
  std::vector<Exponents> order;
  for (const auto& t : p.terms()) order.push_back(t.exponents);
  CHECK(order == std::vector<Exponents>{{2, 0}, {1, 1}, {1, 0}, {0, 1}, {0, 0}});
  CHECK(grlex_greater({1, 0, 0}, {0, 1, 1}) == false);
  CHECK(grlex_greater({0, 2}, {1, 0}));
}

TEST_CASE("construction merges duplicates and drops zeros") {
  const MultiPoly p(2, {Term{{1, 0}, 2}, Term{{1, 0}, -2}, Term{{0, 1}, 1}, Term{{0, 1}, Rational(1, 2)}});
  CHECK(p.size() == 1);
  CHECK(p.coefficient({0, 1}) == Rational(3, 2));
  CHECK_THROWS_AS(MultiPoly(0), DimensionError);
  CHECK(MultiPoly(3).total_degree() == -1);
}

TEST_CASE("addition and multiplication examples") {
  CHECK((x1() + (-x1())).is_zero());
  CHECK(uni({-1, 0, 1}) + uni({1}) == uni({0, 0, 1}));
  CHECK(uni({0, 0, Rational(-1, 2), Rational(1, 3)}) + uni({0, 0, Rational(1, 2)}) == uni({0, 0, 0, Rational(1, 3)}));
  CHECK(uni({-1, 1}) * uni({1, 1}) == uni({-1, 0, 1}));
  CHECK((x1() * MultiPoly(1)).is_zero());
  CHECK(x1() * uni({-1, 1}) * uni({-2, 1}) == uni({0, 2, -3, 1}));
}

TEST_CASE("derivative and antiderivative examples") {
  CHECK(partial(uni({-1, 0, 1}), 0) == uni({0, 2}));
  const MultiPoly x2y = MultiPoly::monomial({2, 1}, 1);
  CHECK(partial(x2y, 1) == MultiPoly::monomial({2, 0}, 1));
  CHECK(antiderivative(x1(), 0) == uni({0, 0, Rational(1, 2)}));
  CHECK(antiderivative(uni({0, -1, 1}), 0) == uni({0, 0, Rational(-1, 2), Rational(1, 3)}));
  CHECK(antiderivative(uni({7}), 0).coefficient({0}) == 0);
}

TEST_CASE("composition examples") {
  CHECK(compose(uni({0, 0, 1}), PolyMap(1, {uni({1, 1})})) == uni({1, 2, 1}));
  Rng rng(3);
  const MultiPoly p = testing::random_poly(rng, 3, 8, 5, 9);
  CHECK(compose(p, PolyMap::identity(3)) == p);
}

TEST_CASE("shear composes with its inverse to the identity") {
  const std::size_t n = 3;
  const MultiPoly z1 = MultiPoly::variable(n, 0);
  const MultiPoly p2 = compose(uni({1, -3, 2}), PolyMap(n, {z1}));
  const MultiPoly p3 = compose(uni({0, Rational(1, 2)}), PolyMap(n, {z1}));
  const PolyMap shear(n, {z1, MultiPoly::variable(n, 1) - p2, MultiPoly::variable(n, 2) - p3});
  const PolyMap unshear(n, {z1, MultiPoly::variable(n, 1) + p2, MultiPoly::variable(n, 2) + p3});
  CHECK(compose(MultiPoly::variable(n, 0), shear) == z1);
  CHECK(compose_map(shear, unshear) == PolyMap::identity(n));
  CHECK(compose_map(unshear, shear) == PolyMap::identity(n));

  RationalMatrix t = RationalMatrix::identity(n);
  t(0, 1) = 2;
  t(0, 2) = -1;
  CHECK(compose_map(PolyMap::identity(n), PolyMap::linear(t)) == PolyMap::linear(t));
}

TEST_CASE("evaluation examples") {
  const MultiPoly p = uni({-1, 0, 1});
  CHECK(eval_rational(p, RationalVector{1}) == 0);
  CHECK(eval_rational(p, RationalVector{Rational(1, 2)}) == Rational(-3, 4));
  const std::vector<double> two{2.0};
  CHECK(eval_float(p, two) == 3.0);
  CHECK(eval_float(MultiPoly(1), two) == 0.0);
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0};
  CHECK(pairwise_sum(v) == 55.0);
}

TEST_CASE("to_string renders canonical order") {
  const MultiPoly p(2, {Term{{2, 1}, 1}, Term{{1, 0}, Rational(-1, 2)}, Term{{0, 0}, 3}});
  CHECK(to_string(p) == "x1^2*x2 - 1/2*x1 + 3");
  CHECK(to_string(MultiPoly(2)) == "0");
}

TEST_CASE("property: ring axioms on random polynomials") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
    const MultiPoly a = testing::random_poly(rng, n, 6, 4, 7);
    const MultiPoly b = testing::random_poly(rng, n, 6, 4, 7);
    const MultiPoly c = testing::random_poly(rng, n, 6, 4, 7);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a * MultiPoly::constant(n, 1) == a);
    CHECK(a * b == testing::naive_mul(a, b));
    CHECK(pow(a, 3) == a * a * a);
  }
}

TEST_CASE("property: partial inverts antiderivative for 100 random polynomials") {
  Rng rng(102);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
    const MultiPoly p = testing::random_poly(rng, n, 7, 6, 11);
    const std::size_t var = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1));
    CHECK(partial(antiderivative(p, var), var) == p);
  }
}

TEST_CASE("property: composition is associative and commutes with evaluation") {
  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2;
    const MultiPoly p = testing::random_poly(rng, n, 4, 3, 5);
    const PolyMap g(n, {testing::random_poly(rng, n, 3, 2, 5), testing::random_poly(rng, n, 3, 2, 5)});
    const PolyMap h(n, {testing::random_poly(rng, n, 3, 2, 5), testing::random_poly(rng, n, 3, 2, 5)});
    CHECK(compose(compose(p, g), h) == compose(p, compose_map(g, h)));

    const RationalVector x{rng.rational(5), rng.rational(5)};
    const RationalVector gx{testing::naive_eval(g[0], x), testing::naive_eval(g[1], x)};
    CHECK(testing::naive_eval(compose(p, g), x) == testing::naive_eval(p, gx));
    CHECK(eval_rational(p, gx) == testing::naive_eval(p, gx));
  }
}

TEST_CASE("property: eval_float agrees with exact evaluation") {
  Rng rng(104);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
    const MultiPoly p = testing::random_poly(rng, n, 10, 6, 20);
    RationalVector xq(n);
    std::vector<double> xf(n);
    for (std::size_t i = 0; i < n; ++i) {
      xf[i] = rng.rational(20).get_d();
      xq[i] = from_double(xf[i]);
    }
    const double exact = testing::naive_eval(p, xq).get_d();
    double magnitude = 0.0;
    for (const auto& t : p.terms()) {
      double m = std::abs(t.coefficient.get_d());
      for (std::size_t i = 0; i < n; ++i) m *= std::pow(std::abs(xf[i]), t.exponents[i]);
      magnitude += m;
    }
    CHECK(std::abs(eval_float(p, xf) - exact) <= 1e-12 * std::max(magnitude, 1e-300));
  }
}

TEST_CASE("FloatPolyMap magnitude bounds the rounding error") {
  Rng rng(105);
  const MultiPoly p = testing::random_poly(rng, 2, 12, 8, 20);
  const FloatPolyMap m(PolyMap(2, {p}));
  const std::vector<double> x{0.7, -1.3};
  double value = 0.0, magnitude = 0.0;
  m.evaluate(x, std::span<double>(&value, 1), std::span<double>(&magnitude, 1));
  const double exact = testing::naive_eval(p, {from_double(0.7), from_double(-1.3)}).get_d();
  CHECK(std::abs(value - exact) <= 64 * 2.2e-16 * magnitude);
  CHECK(magnitude >= std::abs(value));
  CHECK_THROWS_AS(m(std::vector<double>{std::nan(""), 0.0}), DimensionError);
}

TEST_CASE("Jacobian, negative gradient and Hessian") {
  const MultiPoly p(2, {Term{{2, 1}, 1}, Term{{0, 3}, -2}});
  const auto j = jacobian(negative_gradient(p));
  CHECK(j[0][0] == MultiPoly::monomial({0, 1}, -2));
  CHECK(j[1][1] == MultiPoly::monomial({0, 1}, 12));
  const RationalMatrix h = hessian_at(p, RationalVector{1, 2});
  CHECK(h(0, 0) == 4);
  CHECK(h(0, 1) == 2);
  CHECK(h(1, 0) == 2);
  CHECK(h(1, 1) == -24);
}
