#include "morseforge/morse_scalar.hpp"

#include <algorithm>
#include <utility>

namespace morseforge {

AlphaSpec::AlphaSpec(std::vector<Rational> roots) : roots_(std::move(roots)) {
  if (roots_.empty()) throw HypothesisError("alpha needs at least one root");
  std::sort(roots_.begin(), roots_.end());
  for (std::size_t i = 1; i < roots_.size(); ++i) {
    if (roots_[i] == roots_[i - 1]) {
      throw HypothesisError("repeated root " + to_string(roots_[i]) + ": zeros must be simple");
    }
  }
}

MultiPoly build_alpha(const AlphaSpec& spec) {
  MultiPoly alpha = MultiPoly::constant(1, 1);
  for (const auto& a : spec.roots()) alpha = alpha * MultiPoly::univariate({-a, 1});
  return alpha;
}

namespace {

// Remainder of a modulo b for univariate coefficient vectors (ascending).
std::vector<Rational> remainder(std::vector<Rational> a, const std::vector<Rational>& b) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

}  // namespace

MultiPoly univariate_gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.dimension() != 1 || b.dimension() != 1) throw DimensionError("univariate_gcd: need univariate");
  std::vector<Rational> x = a.univariate_coefficients();
  std::vector<Rational> y = b.univariate_coefficients();
  while (!y.empty()) {
    auto r = remainder(std::move(x), y);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return MultiPoly(1);
  const Rational lead = x.back();
  for (auto& c : x) c /= lead;
  return MultiPoly::univariate(x);
}

MorsePair build_f(const MultiPoly& alpha) {
  if (alpha.dimension() != 1) throw DimensionError("build_f: alpha must be univariate");
  if (alpha.is_constant()) throw HypothesisError("build_f: alpha must be nonconstant");
  const MultiPoly dalpha = partial(alpha, 0);
  if (univariate_gcd(alpha, dalpha).total_degree() > 0) {
    throw HypothesisError("build_f: alpha has a repeated root; its zeros must be simple");
  }

  MultiPoly beta = alpha - dalpha;

  const PolyMap in_x(2, {MultiPoly::variable(2, 0)});
  const MultiPoly a2 = compose(alpha, in_x);
  const MultiPoly b2 = compose(beta, in_x);
  const MultiPoly y = MultiPoly::variable(2, 1);
  const MultiPoly inner = a2 - b2 * b2 * y;
  const MultiPoly integral = compose(antiderivative(alpha * beta, 0), in_x);

  return MorsePair{alpha, std::move(beta), inner * inner - integral, {}};
}

MorsePair build_f(const AlphaSpec& spec) {
  MorsePair pair = build_f(build_alpha(spec));
  pair.roots = spec.roots();
  return pair;
}

RationalMatrix hessian_f(const MorsePair& pair, const Rational& x, const Rational& y) {
  const RationalVector point{x, y};
  return hessian_at(pair.f, point);
}

CertReport certify_critical_set(const MorsePair& pair, const NewtonConfig& newton) {
  if (pair.roots.empty()) {
    throw HypothesisError("certify_critical_set: the roots of alpha are not known exactly");
  }
  std::vector<RationalVector> points;
  points.reserve(pair.roots.size());
  for (const auto& a : pair.roots) points.push_back({a, Rational(0)});
  return certify(pair.f, points, BoxSpec::around(points), newton);
}

}  // namespace morseforge
