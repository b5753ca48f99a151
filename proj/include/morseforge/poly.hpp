#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "morseforge/matrix.hpp"
#include "morseforge/rational.hpp"

namespace morseforge {

/// Exponent vector of a monomial; its length is the ambient dimension.
using Exponents = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Exponents& e);

/// Graded lexicographic order: higher total degree first, ties broken
/// lexicographically with x1 > x2 > ... > xn.
bool grlex_greater(const Exponents& a, const Exponents& b);

struct Term {
  Exponents exponents;
  Rational coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Exact sparse polynomial in `dimension` variables with rational coefficients.
///
/// Terms are kept sorted in descending graded lexicographic order with no zero
/// coefficients, so two polynomials are equal iff their term lists are equal.
/// The zero polynomial has no terms. Values are immutable once built.
class MultiPoly {
 public:
  explicit MultiPoly(std::size_t dimension);
  /// Merges duplicate monomials and drops zero coefficients.
  MultiPoly(std::size_t dimension, std::vector<Term> terms);

  static MultiPoly constant(std::size_t dimension, const Rational& value);
  static MultiPoly variable(std::size_t dimension, std::size_t var);
  static MultiPoly monomial(const Exponents& exponents, const Rational& coefficient);
  /// Univariate polynomial from ascending coefficients c0 + c1 x + ...
  static MultiPoly univariate(std::initializer_list<Rational> ascending);
  static MultiPoly univariate(std::span<const Rational> ascending);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  /// -1 for the zero polynomial.
  long total_degree() const;
  /// -1 for the zero polynomial.
  long degree_in(std::size_t var) const;
  Rational coefficient(const Exponents& exponents) const;

  /// Coefficient list c0..cd of a univariate polynomial.
  std::vector<Rational> univariate_coefficients() const;

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const Rational& s, const MultiPoly& p);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

 private:
  std::size_t dimension_;
  std::vector<Term> terms_;
};

MultiPoly add(const MultiPoly& a, const MultiPoly& b);
MultiPoly mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly pow(const MultiPoly& p, unsigned exponent);

MultiPoly partial(const MultiPoly& p, std::size_t var);
/// Anti-derivative in `var` with every term carrying a factor of that variable,
/// i.e. zero integration constant.
MultiPoly antiderivative(const MultiPoly& p, std::size_t var);

/// Polynomial map R^domain_dim -> R^components.size().
class PolyMap {
 public:
  PolyMap(std::size_t domain_dim, std::vector<MultiPoly> components);

  static PolyMap identity(std::size_t n);
  /// x -> A x for a rational matrix A.
  static PolyMap linear(const RationalMatrix& a);

  std::size_t domain_dim() const { return domain_dim_; }
  std::size_t codomain_dim() const { return components_.size(); }
  const std::vector<MultiPoly>& components() const { return components_; }
  const MultiPoly& operator[](std::size_t i) const { return components_[i]; }

  friend bool operator==(const PolyMap&, const PolyMap&) = default;

 private:
  std::size_t domain_dim_;
  std::vector<MultiPoly> components_;
};

/// Substitutes variable i of p by component i of m.
MultiPoly compose(const MultiPoly& p, const PolyMap& m);
/// outer ∘ inner
PolyMap compose_map(const PolyMap& outer, const PolyMap& inner);

Rational eval_rational(const MultiPoly& p, std::span<const Rational> x);
RationalVector eval_rational(const PolyMap& m, std::span<const Rational> x);

/// Double-precision evaluation, terms summed pairwise in canonical order.
double eval_float(const MultiPoly& p, std::span<const double> x);

/// Rows are components, columns variables: J[i][j] = d m_i / d x_j.
std::vector<std::vector<MultiPoly>> jacobian(const PolyMap& m);
RationalMatrix eval_jacobian(const PolyMap& m, std::span<const Rational> x);

/// The map (-dp/dx1, ..., -dp/dxn).
PolyMap negative_gradient(const MultiPoly& p);
/// Exact Hessian of p at x via symbolic second partials.
RationalMatrix hessian_at(const MultiPoly& p, std::span<const Rational> x);

/// Human-readable form, e.g. "x1^2*x2 - 1/2*x1 + 3".
std::string to_string(const MultiPoly& p);

}  // namespace morseforge
