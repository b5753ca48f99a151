#pragma once

#include <vector>

#include "morseforge/matrix.hpp"
#include "morseforge/poly.hpp"

namespace morseforge {

/// k >= 1 pairwise distinct points of Q^n, n >= 2.
class PointSet {
 public:
  /// Throws HypothesisError for n < 2, an empty set or duplicate points, and
  /// DimensionError when a point has the wrong length.
  PointSet(std::size_t dimension, std::vector<RationalVector> points);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<RationalVector>& points() const { return points_; }
  const RationalVector& operator[](std::size_t i) const { return points_[i]; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dimension_;
  std::vector<RationalVector> points_;
};

/// A polynomial automorphism F = Pi o T of Q^n sending X into the first axis.
struct CoordChange {
  PolyMap forward;                       // F
  PolyMap inverse;                       // F^-1 = T^-1 o Pi^-1
  RationalVector direction;              // p, the first row of T
  RationalMatrix linear_part;            // T
  std::vector<MultiPoly> interpolants;   // p_2 .. p_n, univariate
  RationalVector axis_images;            // first coordinate of F(x_i), in input order
};

/// First p = (1, t, t^2, ..., t^(n-1)), t = 0, 1, 2, ..., with p.(xi - eta) != 0
/// for all distinct xi, eta in X.
RationalVector choose_direction(const PointSet& xs);

/// Rows p^T, e_2^T, ..., e_n^T. Throws DimensionError unless p has length n
/// and p_1 != 0.
RationalMatrix build_linear(const RationalVector& p, std::size_t n);

/// For j = 2..n, the Lagrange polynomial through (z1_i, zj_i). The first
/// coordinates must be pairwise distinct (std::logic_error otherwise).
std::vector<MultiPoly> build_interpolants(const std::vector<RationalVector>& z_points);

CoordChange build_coord_change(const PointSet& xs);

/// det of the symbolic Jacobian of m, as a polynomial.
MultiPoly jacobian_determinant(const PolyMap& m);

}  // namespace morseforge
