#pragma once

#include <vector>

#include "morseforge/matrix.hpp"
#include "morseforge/poly.hpp"
#include "morseforge/verify.hpp"

namespace morseforge {

/// The finite set of simple zeros a_1 < ... < a_k of alpha(x) = prod (x - a_i).
class AlphaSpec {
 public:
  /// Sorts the roots; throws HypothesisError when empty or when two coincide.
  explicit AlphaSpec(std::vector<Rational> roots);

  const std::vector<Rational>& roots() const { return roots_; }
  std::size_t size() const { return roots_.size(); }

 private:
  std::vector<Rational> roots_;
};

/// alpha, beta = alpha - alpha', and the bivariate f(x, y) built from them.
struct MorsePair {
  MultiPoly alpha;  // dimension 1
  MultiPoly beta;   // dimension 1
  MultiPoly f;      // dimension 2, variables (x, y)
  /// The zeros of alpha when it came from an AlphaSpec; empty otherwise.
  std::vector<Rational> roots;
};

/// Monic alpha(x) = prod (x - a_i).
MultiPoly build_alpha(const AlphaSpec& spec);

/// f(x, y) = (alpha(x) - beta(x)^2 y)^2 - A(x), where A is the anti-derivative
/// of alpha*beta with A(0) = 0.
///
/// Throws HypothesisError when alpha is constant or has a repeated root
/// (gcd(alpha, alpha') nonconstant).
MorsePair build_f(const MultiPoly& alpha);
MorsePair build_f(const AlphaSpec& spec);

/// Exact Hessian of f at (x, y) from symbolic second partials.
RationalMatrix hessian_f(const MorsePair& pair, const Rational& x, const Rational& y);

/// Exact gradient and Hessian checks at every (a_i, 0) plus a numeric search
/// for other critical points of f over the standard box around them. Needs
/// pair.roots (HypothesisError when empty).
CertReport certify_critical_set(const MorsePair& pair, const NewtonConfig& newton = {});

/// Monic gcd of two univariate polynomials by the Euclidean algorithm over Q.
MultiPoly univariate_gcd(const MultiPoly& a, const MultiPoly& b);

}  // namespace morseforge
