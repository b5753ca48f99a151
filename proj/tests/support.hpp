#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "morseforge/coord_change.hpp"
#include "morseforge/poly.hpp"

namespace testing {

using namespace morseforge;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }

  /// p/q with |p| <= height, 1 <= q <= height.
  Rational rational(long height) {
    Rational r(integer(-height, height), integer(1, height));
    r.canonicalize();
    return r;
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline MultiPoly random_poly(Rng& rng, std::size_t n, std::size_t terms, unsigned max_degree, long height) {
  std::vector<Term> out;
  for (std::size_t t = 0; t < terms; ++t) {
    Exponents e(n, 0);
    unsigned budget = static_cast<unsigned>(rng.integer(0, max_degree));
    for (std::size_t i = 0; i < n && budget > 0; ++i) {
      const unsigned d = static_cast<unsigned>(rng.integer(0, budget));
      e[(i + t) % n] = d;
      budget -= d;
    }
    out.push_back(Term{std::move(e), rng.rational(height)});
  }
  return MultiPoly(n, std::move(out));
}

/// k distinct points of Q^n with coordinates of height <= `height`.
inline PointSet random_point_set(Rng& rng, std::size_t n, std::size_t k, long height) {
  std::vector<RationalVector> pts;
  while (pts.size() < k) {
    RationalVector p(n);
    for (auto& c : p) c = rng.rational(height);
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return PointSet(n, std::move(pts));
}

/// k distinct points with small integer coordinates; collinear-prone sets
/// that force a non-trivial projection direction.
inline PointSet random_grid_set(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<RationalVector> pts;
  while (pts.size() < k) {
    RationalVector p(n);
    for (auto& c : p) c = Rational(rng.integer(-1, 1));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return PointSet(n, std::move(pts));
}

// Oracles below use none of the library's evaluation or arithmetic kernels.

inline Rational naive_pow(const Rational& x, std::uint32_t e) {
  Rational r(1);
  for (std::uint32_t i = 0; i < e; ++i) r *= x;
  return r;
}

inline Rational naive_eval(const MultiPoly& p, const RationalVector& x) {
  Rational sum(0);
  for (const auto& t : p.terms()) {
    Rational m = t.coefficient;
    for (std::size_t i = 0; i < x.size(); ++i) m *= naive_pow(x[i], t.exponents[i]);
    sum += m;
  }
  return sum;
}

inline double naive_eval_double(const MultiPoly& p, const std::vector<double>& x) {
  long double sum = 0;
  for (const auto& t : p.terms()) {
    long double m = t.coefficient.get_d();
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::uint32_t k = 0; k < t.exponents[i]; ++k) m *= x[i];
    sum += m;
  }
  return static_cast<double>(sum);
}

inline MultiPoly naive_mul(const MultiPoly& a, const MultiPoly& b) {
  std::map<Exponents, Rational> acc;
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      Exponents e(a.dimension());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = s.exponents[i] + t.exponents[i];
      acc[e] += s.coefficient * t.coefficient;
    }
  }
  std::vector<Term> terms;
  for (auto& [e, c] : acc) terms.push_back(Term{e, c});
  return MultiPoly(a.dimension(), std::move(terms));
}

/// Cofactor expansion along the first row.
inline Rational cofactor_det(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Rational det(0);
  for (std::size_t c = 0; c < n; ++c) {
    RationalMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = m(i, j);
    const Rational term = m(0, c) * cofactor_det(minor);
    det += (c % 2 == 0) ? term : Rational(-term);
  }
  return det;
}

/// Dense univariate coefficients c0..cd.
using Coeffs = std::vector<Rational>;

inline void trim(Coeffs& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

inline Coeffs poly_rem(Coeffs a, const Coeffs& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    trim(a);
  }
  return a;
}

inline Coeffs derivative(const Coeffs& c) {
  Coeffs d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<long>(i));
  return d;
}

inline int sign_at(const Coeffs& c, const Rational& x) {
  Rational v(0);
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return sgn(v);
}

/// Number of distinct real roots in (lo, hi] by Sturm's theorem.
inline int sturm_count(Coeffs p, const Rational& lo, const Rational& hi) {
  trim(p);
  std::vector<Coeffs> chain{p, derivative(p)};
  while (true) {
    Coeffs r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  auto variations = [&](const Rational& x) {
    int count = 0, last = 0;
    for (const auto& c : chain) {
      const int s = sign_at(c, x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return variations(lo) - variations(hi);
}

inline std::vector<double> to_doubles(const RationalVector& v) {
  std::vector<double> out;
  for (const auto& r : v) out.push_back(r.get_d());
  return out;
}

}  // namespace testing
