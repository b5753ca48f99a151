#pragma once

#include <vector>

#include "morseforge/coord_change.hpp"
#include "morseforge/matrix.hpp"
#include "morseforge/morse_scalar.hpp"
#include "morseforge/poly.hpp"

namespace morseforge {

/// Everything built on the way from X to P, kept for audit.
struct SynthesisResult {
  PointSet input;
  CoordChange change;
  MorsePair morse;
  MultiPoly q;           // f(x1, x2) + 1/2 sum_{i>2} xi^2
  MultiPoly p_poly;      // q o F
  PolyMap grad_field;    // -grad P
};

/// P whose critical points are exactly X, each a nondegenerate local minimum.
SynthesisResult synthesize(const PointSet& xs);

/// q(x1, ..., xn) = f(x1, x2) + 1/2 sum_{i>2} xi^2.
MultiPoly build_q(const MultiPoly& f, std::size_t n);

/// Exact Hessian of P at x from symbolic second partials.
RationalMatrix hessian_at(const SynthesisResult& result, const RationalVector& x);

/// -grad P.
PolyMap gradient_field(const SynthesisResult& result);

/// Upper bound deg(f) * max_j deg(F_j) on deg P.
long degree_bound(const SynthesisResult& result);

/// The flow x1' = gamma(x1), xj' = -xj with gamma = -prod (x - a_i) prod (x - b_i),
/// in coordinates where X sits on the first axis.
struct SaddleField {
  MultiPoly gamma;             // dimension 1
  PolyMap field;               // transformed coordinates
  RationalVector stable_set;   // a_1 < ... < a_k
  RationalVector saddle_set;   // b_i = (a_i + a_{i+1}) / 2
  CoordChange change;
  /// The same field in original coordinates: JF(x)^-1 g(F(x)).
  PolyMap pulled_back;
};

SaddleField build_saddle_field(const PointSet& xs);

/// Equilibria of the transformed field, (a_i, 0, ..., 0) then (b_i, 0, ..., 0).
std::vector<RationalVector> saddle_field_equilibria(const SaddleField& s);

}  // namespace morseforge
