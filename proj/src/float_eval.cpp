#include "morseforge/float_eval.hpp"

#include <algorithm>
#include <cmath>

namespace morseforge {

double pairwise_sum(std::span<const double> v) {
  constexpr std::size_t kBlock = 8;
  if (v.size() <= kBlock) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

FloatPolyMap::FloatPolyMap(const std::vector<MultiPoly>& polys) {
  if (polys.empty()) return;
  dimension_ = polys.front().dimension();
  std::uint32_t max_exp = 0;
  for (const auto& p : polys) {
    if (p.dimension() != dimension_) throw DimensionError("FloatPolyMap: mixed dimensions");
    for (const auto& t : p.terms())
      for (auto e : t.exponents) max_exp = std::max(max_exp, e);
  }
  stride_ = max_exp + 1;
  polys_.reserve(polys.size());
  for (const auto& p : polys) {
    Compiled c;
    c.coefficients.reserve(p.size());
    c.exponents.reserve(p.size() * dimension_);
    for (const auto& t : p.terms()) {
      c.coefficients.push_back(t.coefficient.get_d());
      c.exponents.insert(c.exponents.end(), t.exponents.begin(), t.exponents.end());
    }
    polys_.push_back(std::move(c));
  }
}

void FloatPolyMap::fill_powers(std::span<const double> x, std::vector<double>& powers) const {
  if (x.size() != dimension_) throw DimensionError("eval_float: point length mismatch");
  for (double v : x) {
    if (!std::isfinite(v)) throw DimensionError("eval_float: non-finite input");
  }
  powers.assign(dimension_ * stride_, 1.0);
  for (std::size_t v = 0; v < dimension_; ++v) {
    double* row = powers.data() + v * stride_;
    for (std::size_t e = 1; e < stride_; ++e) row[e] = row[e - 1] * x[v];
  }
}

void FloatPolyMap::evaluate(std::span<const double> x, std::span<double> out) const {
  if (out.size() != polys_.size()) throw DimensionError("FloatPolyMap: output size mismatch");
  thread_local std::vector<double> powers;
  thread_local std::vector<double> values;
  fill_powers(x, powers);
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    const auto& c = polys_[i];
    const std::size_t nterms = c.coefficients.size();
    values.resize(nterms);
    const std::uint32_t* e = c.exponents.data();
    for (std::size_t t = 0; t < nterms; ++t, e += dimension_) {
      double v = c.coefficients[t];
      for (std::size_t var = 0; var < dimension_; ++var) v *= powers[var * stride_ + e[var]];
      values[t] = v;
    }
    out[i] = pairwise_sum(values);
  }
}

void FloatPolyMap::evaluate(std::span<const double> x, std::span<double> out,
                            std::span<double> magnitude) const {
  if (out.size() != polys_.size() || magnitude.size() != polys_.size())
    throw DimensionError("FloatPolyMap: output size mismatch");
  thread_local std::vector<double> powers;
  thread_local std::vector<double> values;
  thread_local std::vector<double> absolute;
  fill_powers(x, powers);
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    const auto& c = polys_[i];
    const std::size_t nterms = c.coefficients.size();
    values.resize(nterms);
    absolute.resize(nterms);
    const std::uint32_t* e = c.exponents.data();
    for (std::size_t t = 0; t < nterms; ++t, e += dimension_) {
      double v = c.coefficients[t];
      for (std::size_t var = 0; var < dimension_; ++var) v *= powers[var * stride_ + e[var]];
      values[t] = v;
      absolute[t] = std::abs(v);
    }
    out[i] = pairwise_sum(values);
    magnitude[i] = pairwise_sum(absolute);
  }
}

std::vector<double> FloatPolyMap::operator()(std::span<const double> x) const {
  std::vector<double> out(polys_.size());
  evaluate(x, out);
  return out;
}

}  // namespace morseforge
