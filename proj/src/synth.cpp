#include "morseforge/synth.hpp"

#include <algorithm>
#include <utility>

namespace morseforge {

MultiPoly build_q(const MultiPoly& f, std::size_t n) {
  if (f.dimension() != 2) throw DimensionError("build_q: f must be bivariate");
  if (n < 2) throw HypothesisError("build_q: need n >= 2");
  MultiPoly q = compose(f, PolyMap(n, {MultiPoly::variable(n, 0), MultiPoly::variable(n, 1)}));
  const Rational half(1, 2);
  for (std::size_t i = 2; i < n; ++i) {
    Exponents e(n, 0);
    e[i] = 2;
    q = q + MultiPoly::monomial(e, half);
  }
  return q;
}

SynthesisResult synthesize(const PointSet& xs) {
  CoordChange change = build_coord_change(xs);
  MorsePair morse = build_f(AlphaSpec(change.axis_images));
  MultiPoly q = build_q(morse.f, xs.dimension());
  MultiPoly p = compose(q, change.forward);
  PolyMap grad = negative_gradient(p);
  return SynthesisResult{xs, std::move(change), std::move(morse), std::move(q), std::move(p),
                         std::move(grad)};
}

RationalMatrix hessian_at(const SynthesisResult& result, const RationalVector& x) {
  return hessian_at(result.p_poly, x);
}

PolyMap gradient_field(const SynthesisResult& result) { return negative_gradient(result.p_poly); }

long degree_bound(const SynthesisResult& result) {
  long max_component = 0;
  for (const auto& c : result.change.forward.components()) {
    max_component = std::max(max_component, c.total_degree());
  }
  return std::max(result.q.total_degree(), 0L) * max_component;
}

SaddleField build_saddle_field(const PointSet& xs) {
  CoordChange change = build_coord_change(xs);
  RationalVector stable = change.axis_images;
  std::sort(stable.begin(), stable.end());

  RationalVector saddles;
  for (std::size_t i = 0; i + 1 < stable.size(); ++i) {
    saddles.push_back((stable[i] + stable[i + 1]) / 2);
  }

  MultiPoly gamma = MultiPoly::constant(1, -1);
  for (const auto& a : stable) gamma = gamma * MultiPoly::univariate({-a, 1});
  for (const auto& b : saddles) gamma = gamma * MultiPoly::univariate({-b, 1});

  const std::size_t n = xs.dimension();
  std::vector<MultiPoly> components{compose(gamma, PolyMap(n, {MultiPoly::variable(n, 0)}))};
  for (std::size_t j = 1; j < n; ++j) components.push_back(-MultiPoly::variable(n, j));
  PolyMap field(n, std::move(components));

  // x' = (DF)^-1 g(F(x)), and (DF(x))^-1 = D(F^-1)(F(x)).
  const PolyMap g_of_f = compose_map(field, change.forward);
  const auto inverse_jacobian = jacobian(change.inverse);
  std::vector<MultiPoly> pulled;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly sum(n);
    for (std::size_t j = 0; j < n; ++j) {
      const MultiPoly& entry = inverse_jacobian[i][j];
      if (entry.is_zero()) continue;
      sum = sum + compose(entry, change.forward) * g_of_f[j];
    }
    pulled.push_back(std::move(sum));
  }

  return SaddleField{std::move(gamma),  std::move(field), std::move(stable), std::move(saddles),
                     std::move(change), PolyMap(n, std::move(pulled))};
}

std::vector<RationalVector> saddle_field_equilibria(const SaddleField& s) {
  const std::size_t n = s.field.domain_dim();
  std::vector<RationalVector> out;
  for (const auto* set : {&s.stable_set, &s.saddle_set}) {
    for (const auto& a : *set) {
      RationalVector p(n, Rational(0));
      p[0] = a;
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace morseforge
