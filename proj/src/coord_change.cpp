#include "morseforge/coord_change.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace morseforge {

PointSet::PointSet(std::size_t dimension, std::vector<RationalVector> points)
    : dimension_(dimension), points_(std::move(points)) {
  if (dimension_ < 2) {
    throw HypothesisError("X must lie in R^n with n >= 2 (got n = " + std::to_string(dimension_) + ")");
  }
  if (points_.empty()) throw HypothesisError("X must be a nonempty finite set");
  for (const auto& p : points_) {
    if (p.size() != dimension_) {
      throw DimensionError("point of length " + std::to_string(p.size()) + " in a set of dimension " +
                           std::to_string(dimension_));
    }
  }
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (points_[i] == points_[j]) {
        throw HypothesisError("points " + std::to_string(i) + " and " + std::to_string(j) +
                              " coincide; X must consist of distinct points");
      }
}

RationalVector choose_direction(const PointSet& xs) {
  const std::size_t n = xs.dimension();
  std::vector<RationalVector> differences;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      RationalVector d(n);
      for (std::size_t c = 0; c < n; ++c) d[c] = xs[i][c] - xs[j][c];
      differences.push_back(std::move(d));
    }

  // Each difference is nonzero, so p(t).d is a nonzero polynomial in t of
  // degree <= n-1; the sweep ends by t = (n-1) * #pairs.
  for (unsigned long t = 0;; ++t) {
    RationalVector p(n);
    Rational power = 1;
    for (std::size_t c = 0; c < n; ++c) {
      p[c] = power;
      power *= t;
    }
    bool separates = true;
    for (const auto& d : differences) {
      Rational dot = 0;
      for (std::size_t c = 0; c < n; ++c) dot += p[c] * d[c];
      if (dot == 0) {
        separates = false;
        break;
      }
    }
    if (separates) return p;
  }
}

RationalMatrix build_linear(const RationalVector& p, std::size_t n) {
  if (p.size() != n) throw DimensionError("build_linear: direction length mismatch");
  if (p[0] == 0) throw DimensionError("build_linear: first entry of the direction must be nonzero");
  RationalMatrix t = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) t(0, c) = p[c];
  return t;
}

std::vector<MultiPoly> build_interpolants(const std::vector<RationalVector>& z_points) {
  if (z_points.empty()) throw DimensionError("build_interpolants: no nodes");
  const std::size_t n = z_points.front().size();
  const std::size_t k = z_points.size();
  std::set<Rational> abscissae;
  for (const auto& z : z_points) {
    if (z.size() != n) throw DimensionError("build_interpolants: mixed dimensions");
    if (!abscissae.insert(z[0]).second) {
      throw std::logic_error("build_interpolants: duplicate first coordinate " + to_string(z[0]));
    }
  }

  // Classical Lagrange basis L_i(z) = prod_{m != i} (z - z1_m) / (z1_i - z1_m).
  std::vector<MultiPoly> basis;
  basis.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    MultiPoly l = MultiPoly::constant(1, 1);
    for (std::size_t m = 0; m < k; ++m) {
      if (m == i) continue;
      const Rational denom = z_points[i][0] - z_points[m][0];
      l = l * MultiPoly::univariate({-z_points[m][0] / denom, 1 / denom});
    }
    basis.push_back(std::move(l));
  }

  std::vector<MultiPoly> out;
  out.reserve(n - 1);
  for (std::size_t j = 1; j < n; ++j) {
    MultiPoly pj(1);
    for (std::size_t i = 0; i < k; ++i) pj = pj + z_points[i][j] * basis[i];
    out.push_back(std::move(pj));
  }
  return out;
}

CoordChange build_coord_change(const PointSet& xs) {
  const std::size_t n = xs.dimension();
  RationalVector p = choose_direction(xs);
  RationalMatrix t = build_linear(p, n);

  std::vector<RationalVector> z_points;
  z_points.reserve(xs.size());
  for (const auto& x : xs.points()) {
    RationalVector z(n);
    for (std::size_t r = 0; r < n; ++r) {
      Rational s = 0;
      for (std::size_t c = 0; c < n; ++c) s += t(r, c) * x[c];
      z[r] = s;
    }
    z_points.push_back(std::move(z));
  }
  std::vector<MultiPoly> interpolants = build_interpolants(z_points);

  // Pi(z) = (z1, z2 - p2(z1), ...) and Pi^-1(z) = (z1, z2 + p2(z1), ...).
  const PolyMap first_coordinate(n, {MultiPoly::variable(n, 0)});
  std::vector<MultiPoly> shear{MultiPoly::variable(n, 0)};
  std::vector<MultiPoly> unshear{MultiPoly::variable(n, 0)};
  for (std::size_t j = 1; j < n; ++j) {
    const MultiPoly lifted = compose(interpolants[j - 1], first_coordinate);
    shear.push_back(MultiPoly::variable(n, j) - lifted);
    unshear.push_back(MultiPoly::variable(n, j) + lifted);
  }
  const PolyMap pi(n, std::move(shear));
  const PolyMap pi_inv(n, std::move(unshear));

  CoordChange change{
      compose_map(pi, PolyMap::linear(t)),
      compose_map(PolyMap::linear(inverse(t)), pi_inv),
      std::move(p),
      std::move(t),
      std::move(interpolants),
      {},
  };
  for (const auto& z : z_points) change.axis_images.push_back(z[0]);
  return change;
}

MultiPoly jacobian_determinant(const PolyMap& m) {
  if (m.domain_dim() != m.codomain_dim()) throw DimensionError("jacobian_determinant: map not square");
  const auto j = jacobian(m);
  const std::size_t n = m.domain_dim();
  // Laplace expansion along the first row; n is small.
  auto det = [&](auto&& self, std::vector<std::size_t> rows, std::vector<std::size_t> cols) -> MultiPoly {
    if (rows.size() == 1) return j[rows[0]][cols[0]];
    MultiPoly sum(n);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
      std::vector<std::size_t> sub_cols = cols;
      sub_cols.erase(sub_cols.begin() + static_cast<long>(c));
      MultiPoly term = j[rows[0]][cols[c]] * self(self, sub_rows, sub_cols);
      sum = (c % 2 == 0) ? sum + term : sum - term;
    }
    return sum;
  };
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return det(det, idx, idx);
}

}  // namespace morseforge
