#include <doctest.h>

#include <set>

#include "morseforge/morse_scalar.hpp"
#include "support.hpp"

using namespace morseforge;
using testing::Rng;

namespace {

MultiPoly uni(std::initializer_list<Rational> c) { return MultiPoly::univariate(c); }

RationalMatrix closed_form_hessian(const Rational& d) {
  RationalMatrix h(2, 2);
  h(0, 0) = 3 * d * d;
  h(0, 1) = h(1, 0) = -2 * d * d * d;
  h(1, 1) = 2 * d * d * d * d;
  return h;
}

std::vector<Rational> random_roots(Rng& rng, std::size_t k) {
  std::set<Rational> roots;
  while (roots.size() < k) roots.insert(rng.rational(20));
  return {roots.begin(), roots.end()};
}

}  // namespace

TEST_CASE("AlphaSpec rejects empty and repeated root sets") {
  CHECK_THROWS_AS(AlphaSpec({}), HypothesisError);
  CHECK_THROWS_AS(AlphaSpec({1, 2, 1}), HypothesisError);
  CHECK(AlphaSpec({2, -1, Rational(1, 2)}).roots() == std::vector<Rational>{-1, Rational(1, 2), 2});
}

TEST_CASE("alpha is the monic product of root factors") {
  CHECK(build_alpha(AlphaSpec({0})) == uni({0, 1}));
  CHECK(build_alpha(AlphaSpec({-1, 1})) == uni({-1, 0, 1}));
  CHECK(build_alpha(AlphaSpec({0, 1, 2})) == uni({0, 2, -3, 1}));
}

TEST_CASE("f for alpha = x matches the hand expansion") {
  const MorsePair m = build_f(AlphaSpec({0}));
  CHECK(m.beta == uni({-1, 1}));
  const MultiPoly x = MultiPoly::variable(2, 0);
  const MultiPoly y = MultiPoly::variable(2, 1);
  const MultiPoly s = (x - MultiPoly::constant(2, 1)) * (x - MultiPoly::constant(2, 1));
  const MultiPoly inner = x - s * y;
  const MultiPoly expected =
      inner * inner - Rational(1, 3) * x * x * x + Rational(1, 2) * x * x;
  CHECK(m.f == expected);
  CHECK(partial(m.f, 1) == Rational(-2) * inner * s);
}

TEST_CASE("gradient of f vanishes exactly on the root set") {
  for (const auto& roots : {std::vector<Rational>{0}, std::vector<Rational>{-1, 1}}) {
    const MorsePair m = build_f(AlphaSpec(roots));
    for (const auto& a : roots) {
      const RationalVector p{a, 0};
      CHECK(eval_rational(partial(m.f, 0), p) == 0);
      CHECK(eval_rational(partial(m.f, 1), p) == 0);
    }
  }
}

TEST_CASE("Hessian of f at the roots: closed forms") {
  const MorsePair x = build_f(AlphaSpec({0}));
  CHECK(hessian_f(x, 0, 0) == closed_form_hessian(1));
  CHECK(determinant(hessian_f(x, 0, 0)) == 2);

  const MorsePair sq = build_f(AlphaSpec({-1, 1}));
  RationalMatrix at_plus(2, 2), at_minus(2, 2);
  at_plus(0, 0) = 12;
  at_plus(0, 1) = at_plus(1, 0) = -16;
  at_plus(1, 1) = 32;
  at_minus(0, 0) = 12;
  at_minus(0, 1) = at_minus(1, 0) = 16;
  at_minus(1, 1) = 32;
  CHECK(hessian_f(sq, 1, 0) == at_plus);
  CHECK(hessian_f(sq, -1, 0) == at_minus);
  CHECK(determinant(at_plus) == 128);
}

TEST_CASE("property: closed-form Hessian and determinant 2 alpha'^6 for random root sets") {
  Rng rng(201);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t k = static_cast<std::size_t>(rng.integer(1, 4));
    const AlphaSpec spec(random_roots(rng, k));
    const MorsePair m = build_f(spec);
    const MultiPoly d_alpha = partial(m.alpha, 0);
    for (const auto& a : spec.roots()) {
      const Rational d = testing::naive_eval(d_alpha, {a});
      const RationalMatrix h = hessian_f(m, a, 0);
      CHECK(h == closed_form_hessian(d));
      CHECK(determinant(h) == 2 * d * d * d * d * d * d);
      CHECK(is_positive_definite(h));
    }
  }
}

TEST_CASE("total degree of f is 4k + 2") {
  for (std::size_t k = 1; k <= 5; ++k) {
    std::vector<Rational> roots;
    for (std::size_t i = 0; i < k; ++i) roots.push_back(Rational(static_cast<long>(i)));
    const MorsePair m = build_f(AlphaSpec(roots));
    CHECK(m.f.total_degree() == static_cast<long>(4 * k + 2));
    Exponents lead{static_cast<std::uint32_t>(4 * k), 2};
    CHECK(m.f.coefficient(lead) == 1);
  }
}

TEST_CASE("externally supplied alpha must have simple roots") {
  CHECK_THROWS_AS(build_f(uni({0, 0, 1})), HypothesisError);
  CHECK_THROWS_AS(build_f(uni({5})), HypothesisError);
  CHECK_THROWS_AS(build_f(MultiPoly::variable(2, 0)), DimensionError);
  const MorsePair m = build_f(uni({1, 0, 1}));
  CHECK(m.roots.empty());
  CHECK(m.f.total_degree() == 10);
  CHECK_THROWS_AS(certify_critical_set(m), HypothesisError);
}

TEST_CASE("univariate gcd is monic") {
  const MultiPoly a = uni({-1, 1}) * uni({-2, 1}) * uni({3});
  const MultiPoly b = uni({-1, 1}) * uni({5, 1});
  CHECK(univariate_gcd(a, b) == uni({-1, 1}));
  CHECK(univariate_gcd(uni({-1, 0, 1}), uni({0, 2})) == uni({1}));
}

TEST_CASE("certify_critical_set on small root sets") {
  NewtonConfig cfg;
  cfg.seeds_per_axis = 24;
  const CertReport one = certify_critical_set(build_f(AlphaSpec({0})), cfg);
  CHECK(one.overall_pass);
  CHECK(one.per_point.size() == 1);

  const CertReport two = certify_critical_set(build_f(AlphaSpec({-1, 1})), cfg);
  CHECK(two.overall_pass);
  CHECK(two.per_point.size() == 2);

  const AlphaSpec three({Rational(1, 3), Rational(1, 2), 2});
  const MorsePair m = build_f(three);
  const CertReport r = certify_critical_set(m, cfg);
  CHECK(r.overall_pass);
  REQUIRE(r.per_point.size() == 3);
  const MultiPoly d_alpha = partial(m.alpha, 0);
  for (const auto& c : r.per_point) {
    const Rational d = testing::naive_eval(d_alpha, {c.point[0]});
    CHECK(c.minors[1] == 2 * d * d * d * d * d * d);
  }
}
