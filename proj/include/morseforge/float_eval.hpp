#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "morseforge/poly.hpp"

namespace morseforge {

/// Sum of v in a fixed pairwise tree (blocks of 8 summed left to right).
double pairwise_sum(std::span<const double> v);

/// A batch of polynomials over the same variables compiled to double
/// coefficients. Evaluating them together shares one power table, which is what
/// the Newton and flow loops need (gradient + Hessian entries at a point).
class FloatPolyMap {
 public:
  FloatPolyMap() = default;
  explicit FloatPolyMap(const std::vector<MultiPoly>& polys);
  explicit FloatPolyMap(const PolyMap& map) : FloatPolyMap(map.components()) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return polys_.size(); }

  /// out[i] = polys[i](x). x must be finite.
  void evaluate(std::span<const double> x, std::span<double> out) const;

  /// Also reports magnitude[i] = sum over terms of |c * x^a|, which bounds the
  /// rounding error of out[i] by a small multiple of eps * magnitude[i].
  void evaluate(std::span<const double> x, std::span<double> out,
                std::span<double> magnitude) const;

  std::vector<double> operator()(std::span<const double> x) const;

 private:
  struct Compiled {
    std::vector<double> coefficients;
    std::vector<std::uint32_t> exponents;  // dimension_ entries per term
  };

  void fill_powers(std::span<const double> x, std::vector<double>& powers) const;

  std::size_t dimension_ = 0;
  std::size_t stride_ = 0;  // max exponent + 1, uniform across variables
  std::vector<Compiled> polys_;
};

}  // namespace morseforge
