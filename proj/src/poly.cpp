#include "morseforge/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "morseforge/float_eval.hpp"

namespace morseforge {

std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool grlex_greater(const Exponents& a, const Exponents& b) {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : e) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

// Packs up to 8 exponents < 256 into one word, x1 in the high byte.
constexpr std::size_t kMaxPackedVars = 8;
constexpr std::uint32_t kMaxPackedExponent = 255;

std::uint64_t pack(const Exponents& e) {
  std::uint64_t key = 0;
  for (auto v : e) key = (key << 8) | v;
  return key;
}

Exponents unpack(std::uint64_t key, std::size_t n) {
  Exponents e(n);
  for (std::size_t i = n; i-- > 0;) {
    e[i] = static_cast<std::uint32_t>(key & 0xff);
    key >>= 8;
  }
  return e;
}

std::uint32_t max_exponent(const MultiPoly& p) {
  std::uint32_t m = 0;
  for (const auto& t : p.terms())
    for (auto v : t.exponents) m = std::max(m, v);
  return m;
}

void sort_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.exponents, b.exponents); });
}

void require_same_dimension(const MultiPoly& a, const MultiPoly& b, const char* op) {
  if (a.dimension() != b.dimension()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" +
                         std::to_string(a.dimension()) + " vs " + std::to_string(b.dimension()) +
                         ")");
  }
}

void require_var(const MultiPoly& p, std::size_t var, const char* op) {
  if (var >= p.dimension()) {
    throw DimensionError(std::string(op) + ": variable index " + std::to_string(var) +
                         " out of range for dimension " + std::to_string(p.dimension()));
  }
}

// Builds the canonical term list from an accumulated (unsorted) map.
template <typename Map, typename Unpack>
std::vector<Term> drain(Map& acc, Unpack&& unpack_key) {
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [key, coeff] : acc) {
    if (coeff == 0) continue;
    terms.push_back(Term{unpack_key(key), std::move(coeff)});
  }
  sort_terms(terms);
  return terms;
}

}  // namespace

MultiPoly::MultiPoly(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw DimensionError("polynomial dimension must be positive");
}

MultiPoly::MultiPoly(std::size_t dimension, std::vector<Term> terms) : MultiPoly(dimension) {
  for (const auto& t : terms) {
    if (t.exponents.size() != dimension) {
      throw DimensionError("monomial length " + std::to_string(t.exponents.size()) +
                           " does not match dimension " + std::to_string(dimension));
    }
  }
  std::unordered_map<Exponents, Rational, ExponentsHash> acc;
  for (auto& t : terms) acc[std::move(t.exponents)] += t.coefficient;
  terms_ = drain(acc, [](const Exponents& e) { return e; });
}

MultiPoly MultiPoly::constant(std::size_t dimension, const Rational& value) {
  return MultiPoly(dimension, {Term{Exponents(dimension, 0), value}});
}

MultiPoly MultiPoly::variable(std::size_t dimension, std::size_t var) {
  if (var >= dimension) throw DimensionError("variable index out of range");
  Exponents e(dimension, 0);
  e[var] = 1;
  return MultiPoly(dimension, {Term{std::move(e), Rational(1)}});
}

MultiPoly MultiPoly::monomial(const Exponents& exponents, const Rational& coefficient) {
  return MultiPoly(exponents.size(), {Term{exponents, coefficient}});
}

MultiPoly MultiPoly::univariate(std::initializer_list<Rational> ascending) {
  return univariate(std::span<const Rational>(ascending.begin(), ascending.size()));
}

MultiPoly MultiPoly::univariate(std::span<const Rational> ascending) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    terms.push_back(Term{Exponents{static_cast<std::uint32_t>(i)}, ascending[i]});
  }
  return MultiPoly(1, std::move(terms));
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && morseforge::total_degree(terms_[0].exponents) == 0);
}

long MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return morseforge::total_degree(terms_.front().exponents);
}

long MultiPoly::degree_in(std::size_t var) const {
  require_var(*this, var, "degree_in");
  long d = -1;
  for (const auto& t : terms_) d = std::max<long>(d, t.exponents[var]);
  return d;
}

Rational MultiPoly::coefficient(const Exponents& exponents) const {
  for (const auto& t : terms_) {
    if (t.exponents == exponents) return t.coefficient;
  }
  return 0;
}

std::vector<Rational> MultiPoly::univariate_coefficients() const {
  if (dimension_ != 1) throw DimensionError("univariate_coefficients: polynomial is not univariate");
  std::vector<Rational> c(terms_.empty() ? 0 : terms_.front().exponents[0] + 1);
  for (const auto& t : terms_) c[t.exponents[0]] = t.coefficient;
  return c;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coefficient = -t.coefficient;
  return r;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  require_same_dimension(a, b, "add");
  // Merge of two grlex-sorted lists.
  MultiPoly r(a.dimension());
  auto& out = r.terms_;
  out.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    if (j == b.terms_.end() || (i != a.terms_.end() && grlex_greater(i->exponents, j->exponents))) {
      out.push_back(*i++);
    } else if (i == a.terms_.end() || grlex_greater(j->exponents, i->exponents)) {
      out.push_back(*j++);
    } else {
      Rational s = i->coefficient + j->coefficient;
      if (s != 0) out.push_back(Term{i->exponents, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const Rational& s, const MultiPoly& p) {
  if (s == 0) return MultiPoly(p.dimension());
  MultiPoly r = p;
  for (auto& t : r.terms_) t.coefficient *= s;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_same_dimension(a, b, "mul");
  const std::size_t n = a.dimension();
  if (a.is_zero() || b.is_zero()) return MultiPoly(n);

  Rational product;
  if (n <= kMaxPackedVars && max_exponent(a) + max_exponent(b) <= kMaxPackedExponent) {
    // Adding packed keys adds exponents bytewise; no byte can overflow.
    std::vector<std::uint64_t> bkeys;
    bkeys.reserve(b.terms_.size());
    for (const auto& t : b.terms_) bkeys.push_back(pack(t.exponents));
    std::unordered_map<std::uint64_t, Rational> acc;
    acc.reserve(std::min<std::size_t>(a.terms_.size() * b.terms_.size(), std::size_t{1} << 16));
    for (const auto& ta : a.terms_) {
      const std::uint64_t ka = pack(ta.exponents);
      for (std::size_t j = 0; j < b.terms_.size(); ++j) {
        mpq_mul(product.get_mpq_t(), ta.coefficient.get_mpq_t(), b.terms_[j].coefficient.get_mpq_t());
        Rational& slot = acc[ka + bkeys[j]];
        mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), product.get_mpq_t());
      }
    }
    MultiPoly r(n);
    r.terms_ = drain(acc, [n](std::uint64_t key) { return unpack(key, n); });
    return r;
  }

  std::unordered_map<Exponents, Rational, ExponentsHash> acc;
  Exponents e(n);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      for (std::size_t v = 0; v < n; ++v) e[v] = ta.exponents[v] + tb.exponents[v];
      mpq_mul(product.get_mpq_t(), ta.coefficient.get_mpq_t(), tb.coefficient.get_mpq_t());
      Rational& slot = acc[e];
      mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), product.get_mpq_t());
    }
  }
  MultiPoly r(n);
  r.terms_ = drain(acc, [](const Exponents& k) { return k; });
  return r;
}

MultiPoly add(const MultiPoly& a, const MultiPoly& b) { return a + b; }
MultiPoly mul(const MultiPoly& a, const MultiPoly& b) { return a * b; }

MultiPoly pow(const MultiPoly& p, unsigned exponent) {
  MultiPoly result = MultiPoly::constant(p.dimension(), 1);
  MultiPoly base = p;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

MultiPoly partial(const MultiPoly& p, std::size_t var) {
  require_var(p, var, "partial");
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    const auto e = t.exponents[var];
    if (e == 0) continue;
    Term d{t.exponents, t.coefficient * e};
    d.exponents[var] = e - 1;
    terms.push_back(std::move(d));
  }
  return MultiPoly(p.dimension(), std::move(terms));
}

MultiPoly antiderivative(const MultiPoly& p, std::size_t var) {
  require_var(p, var, "antiderivative");
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    const auto e = t.exponents[var] + 1;
    Term a{t.exponents, t.coefficient / e};
    a.exponents[var] = e;
    terms.push_back(std::move(a));
  }
  return MultiPoly(p.dimension(), std::move(terms));
}

PolyMap::PolyMap(std::size_t domain_dim, std::vector<MultiPoly> components)
    : domain_dim_(domain_dim), components_(std::move(components)) {
  for (const auto& c : components_) {
    if (c.dimension() != domain_dim_) {
      throw DimensionError("PolyMap component of dimension " + std::to_string(c.dimension()) +
                           " in a map with domain dimension " + std::to_string(domain_dim_));
    }
  }
}

PolyMap PolyMap::identity(std::size_t n) {
  std::vector<MultiPoly> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(MultiPoly::variable(n, i));
  return PolyMap(n, std::move(c));
}

PolyMap PolyMap::linear(const RationalMatrix& a) {
  const std::size_t n = a.cols();
  std::vector<MultiPoly> c;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < n; ++j) {
      Exponents e(n, 0);
      e[j] = 1;
      terms.push_back(Term{std::move(e), a(i, j)});
    }
    c.emplace_back(n, std::move(terms));
  }
  return PolyMap(n, std::move(c));
}

namespace {

// Multivariate Horner scheme: p = sum_e m[var]^e * p_e(x_{var+1}, ...), with
// the p_e composed recursively.
MultiPoly compose_horner(const std::vector<const Term*>& terms, std::size_t var,
                         const PolyMap& m) {
  const std::size_t out_dim = m.domain_dim();
  if (terms.empty()) return MultiPoly(out_dim);
  if (var == m.codomain_dim()) {
    Rational sum = 0;
    for (const Term* t : terms) sum += t->coefficient;
    return MultiPoly::constant(out_dim, sum);
  }
  std::map<std::uint32_t, std::vector<const Term*>, std::greater<>> groups;
  for (const Term* t : terms) groups[t->exponents[var]].push_back(t);

  const std::uint32_t top = groups.begin()->first;
  MultiPoly acc(out_dim);
  auto it = groups.begin();
  for (std::uint32_t d = top + 1; d-- > 0;) {
    if (d != top) acc = acc * m[var];
    if (it != groups.end() && it->first == d) {
      acc = acc + compose_horner(it->second, var + 1, m);
      ++it;
    }
  }
  return acc;
}

}  // namespace

MultiPoly compose(const MultiPoly& p, const PolyMap& m) {
  if (m.codomain_dim() != p.dimension()) {
    throw DimensionError("compose: map has " + std::to_string(m.codomain_dim()) +
                         " components but polynomial has dimension " +
                         std::to_string(p.dimension()));
  }
  std::vector<const Term*> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back(&t);
  return compose_horner(terms, 0, m);
}

PolyMap compose_map(const PolyMap& outer, const PolyMap& inner) {
  if (outer.domain_dim() != inner.codomain_dim()) {
    throw DimensionError("compose_map: arity mismatch");
  }
  std::vector<MultiPoly> c;
  c.reserve(outer.codomain_dim());
  for (const auto& comp : outer.components()) c.push_back(compose(comp, inner));
  return PolyMap(inner.domain_dim(), std::move(c));
}

Rational eval_rational(const MultiPoly& p, std::span<const Rational> x) {
  if (x.size() != p.dimension()) throw DimensionError("eval_rational: point length mismatch");
  const std::size_t n = p.dimension();
  std::vector<std::vector<Rational>> powers(n, std::vector<Rational>(1, Rational(1)));
  Rational sum = 0;
  Rational term;
  for (const auto& t : p.terms()) {
    term = t.coefficient;
    for (std::size_t v = 0; v < n; ++v) {
      const auto e = t.exponents[v];
      if (e == 0) continue;
      auto& pw = powers[v];
      while (pw.size() <= e) pw.push_back(pw.back() * x[v]);
      term *= pw[e];
    }
    sum += term;
  }
  return sum;
}

RationalVector eval_rational(const PolyMap& m, std::span<const Rational> x) {
  RationalVector out;
  out.reserve(m.codomain_dim());
  for (const auto& c : m.components()) out.push_back(eval_rational(c, x));
  return out;
}

double eval_float(const MultiPoly& p, std::span<const double> x) {
  if (x.size() != p.dimension()) throw DimensionError("eval_float: point length mismatch");
  return FloatPolyMap({p})(x)[0];
}

std::vector<std::vector<MultiPoly>> jacobian(const PolyMap& m) {
  std::vector<std::vector<MultiPoly>> j;
  j.reserve(m.codomain_dim());
  for (const auto& c : m.components()) {
    std::vector<MultiPoly> row;
    for (std::size_t v = 0; v < m.domain_dim(); ++v) row.push_back(partial(c, v));
    j.push_back(std::move(row));
  }
  return j;
}

RationalMatrix eval_jacobian(const PolyMap& m, std::span<const Rational> x) {
  RationalMatrix out(m.codomain_dim(), m.domain_dim());
  for (std::size_t i = 0; i < m.codomain_dim(); ++i)
    for (std::size_t v = 0; v < m.domain_dim(); ++v)
      out(i, v) = eval_rational(partial(m[i], v), x);
  return out;
}

PolyMap negative_gradient(const MultiPoly& p) {
  std::vector<MultiPoly> c;
  c.reserve(p.dimension());
  for (std::size_t v = 0; v < p.dimension(); ++v) c.push_back(-partial(p, v));
  return PolyMap(p.dimension(), std::move(c));
}

RationalMatrix hessian_at(const MultiPoly& p, std::span<const Rational> x) {
  const std::size_t n = p.dimension();
  if (x.size() != n) throw DimensionError("hessian_at: point length mismatch");
  RationalMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const MultiPoly di = partial(p, i);
    for (std::size_t j = i; j < n; ++j) {
      h(i, j) = eval_rational(partial(di, j), x);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

std::string to_string(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool negative = t.coefficient < 0;
    const Rational mag = abs(t.coefficient);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t v = 0; v < t.exponents.size(); ++v) {
      if (t.exponents[v] == 0) continue;
      std::string f = "x" + std::to_string(v + 1);
      if (t.exponents[v] > 1) f += "^" + std::to_string(t.exponents[v]);
      factors.push_back(std::move(f));
    }
    if (factors.empty() || mag != 1) factors.insert(factors.begin(), morseforge::to_string(mag));
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

}  // namespace morseforge
