#include "morseforge/io.hpp"

#include <fstream>
#include <sstream>

namespace morseforge {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t positive_size(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    throw ParseError(std::string(what) + " must be a positive integer");
  }
  return j.get<std::size_t>();
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  return j;
}

}  // namespace

json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  throw ParseError("rational must be a string \"p/q\" or an integer");
}

json vector_to_json(const RationalVector& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(rational_to_json(r));
  return a;
}

RationalVector vector_from_json(const json& j) {
  RationalVector v;
  for (const auto& e : array(j, "vector")) v.push_back(rational_from_json(e));
  return v;
}

json matrix_to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    RationalVector row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(vector_to_json(row));
  }
  return rows;
}

RationalMatrix matrix_from_json(const json& j) {
  const auto& rows = array(j, "matrix");
  if (rows.empty()) throw ParseError("matrix must have at least one row");
  const std::size_t cols = array(rows.front(), "matrix row").size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RationalVector row = vector_from_json(rows[i]);
    if (row.size() != cols) throw ParseError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = row[c];
  }
  return m;
}

json poly_to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) {
    terms.push_back({{"exponents", t.exponents},
                     {"num", numerator_string(t.coefficient)},
                     {"den", denominator_string(t.coefficient)}});
  }
  return {{"dimension", p.dimension()}, {"terms", std::move(terms)}};
}

MultiPoly poly_from_json(const json& j) {
  const std::size_t n = positive_size(field(j, "dimension"), "polynomial dimension");
  std::vector<Term> terms;
  for (const auto& t : array(field(j, "terms"), "terms")) {
    const auto& e = array(field(t, "exponents"), "exponents");
    if (e.size() != n) throw ParseError("exponent vector length does not match dimension");
    Exponents exps;
    for (const auto& v : e) {
      if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 0xffffffffLL) {
        throw ParseError("exponents must be non-negative integers");
      }
      exps.push_back(v.get<std::uint32_t>());
    }
    const auto& num = field(t, "num");
    const auto& den = field(t, "den");
    if (!num.is_string() || !den.is_string()) throw ParseError("num and den must be strings");
    terms.push_back(Term{std::move(exps), make_rational(num.get<std::string>(), den.get<std::string>())});
  }
  return MultiPoly(n, std::move(terms));
}

json map_to_json(const PolyMap& m) {
  json comps = json::array();
  for (const auto& c : m.components()) comps.push_back(poly_to_json(c));
  return {{"domain_dim", m.domain_dim()}, {"components", std::move(comps)}};
}

PolyMap map_from_json(const json& j) {
  const std::size_t n = positive_size(field(j, "domain_dim"), "domain_dim");
  std::vector<MultiPoly> comps;
  for (const auto& c : array(field(j, "components"), "components")) comps.push_back(poly_from_json(c));
  try {
    return PolyMap(n, std::move(comps));
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }
}

json pointset_to_json(const PointSet& xs) {
  json pts = json::array();
  for (const auto& p : xs.points()) pts.push_back(vector_to_json(p));
  return {{"dimension", xs.dimension()}, {"points", std::move(pts)}};
}

PointSet pointset_from_json(const json& j) {
  const auto& dim = field(j, "dimension");
  if (!dim.is_number_integer()) throw ParseError("dimension must be an integer");
  const long long n = dim.get<long long>();
  if (n < 0) throw ParseError("dimension must be non-negative");
  std::vector<RationalVector> points;
  for (const auto& p : array(field(j, "points"), "points")) {
    RationalVector v = vector_from_json(p);
    if (static_cast<long long>(v.size()) != n) throw ParseError("point length does not match dimension");
    points.push_back(std::move(v));
  }
  return PointSet(static_cast<std::size_t>(n), std::move(points));
}

json synthesis_to_json(const SynthesisResult& r) {
  json hessians = json::array();
  for (const auto& x : r.input.points()) {
    const RationalMatrix h = hessian_at(r, x);
    json minors = json::array();
    for (const auto& m : leading_principal_minors(h)) minors.push_back(rational_to_json(m));
    hessians.push_back({{"point", vector_to_json(x)}, {"hessian", matrix_to_json(h)}, {"minors", minors}});
  }
  json interpolants = json::array();
  for (const auto& p : r.change.interpolants) interpolants.push_back(poly_to_json(p));

  return {
      {"kind", "synthesis_bundle"},
      {"input", pointset_to_json(r.input)},
      {"coord_change",
       {{"direction", vector_to_json(r.change.direction)},
        {"linear_part", matrix_to_json(r.change.linear_part)},
        {"interpolants", std::move(interpolants)},
        {"axis_images", vector_to_json(r.change.axis_images)},
        {"forward", map_to_json(r.change.forward)},
        {"inverse", map_to_json(r.change.inverse)}}},
      {"morse",
       {{"alpha", poly_to_json(r.morse.alpha)},
        {"beta", poly_to_json(r.morse.beta)},
        {"f", poly_to_json(r.morse.f)},
        {"roots", vector_to_json(r.morse.roots)}}},
      {"q", poly_to_json(r.q)},
      {"p", poly_to_json(r.p_poly)},
      {"neg_gradient", map_to_json(r.grad_field)},
      {"hessians", std::move(hessians)},
      {"degree", r.p_poly.total_degree()},
      {"degree_bound", degree_bound(r)},
  };
}

SynthesisResult synthesis_from_json(const json& j) {
  if (!j.is_object() || j.value("kind", "") != "synthesis_bundle") {
    throw ParseError("not a synthesis bundle (kind != \"synthesis_bundle\")");
  }
  const auto& cc = field(j, "coord_change");
  std::vector<MultiPoly> interpolants;
  for (const auto& p : array(field(cc, "interpolants"), "interpolants")) interpolants.push_back(poly_from_json(p));
  CoordChange change{map_from_json(field(cc, "forward")),
                     map_from_json(field(cc, "inverse")),
                     vector_from_json(field(cc, "direction")),
                     matrix_from_json(field(cc, "linear_part")),
                     std::move(interpolants),
                     vector_from_json(field(cc, "axis_images"))};
  const auto& m = field(j, "morse");
  MorsePair morse{poly_from_json(field(m, "alpha")), poly_from_json(field(m, "beta")),
                  poly_from_json(field(m, "f")), vector_from_json(field(m, "roots"))};
  return SynthesisResult{pointset_from_json(field(j, "input")), std::move(change), std::move(morse),
                         poly_from_json(field(j, "q")), poly_from_json(field(j, "p")),
                         map_from_json(field(j, "neg_gradient"))};
}

json saddle_field_to_json(const PointSet& xs, const SaddleField& s) {
  const std::size_t n = xs.dimension();
  json saddle_points = json::array();
  for (const auto& b : s.saddle_set) {
    RationalVector z(n, Rational(0));
    z[0] = b;
    saddle_points.push_back(vector_to_json(eval_rational(s.change.inverse, z)));
  }
  return {
      {"kind", "saddle_field"},
      {"input", pointset_to_json(xs)},
      {"saddle_points", std::move(saddle_points)},
      {"gamma", poly_to_json(s.gamma)},
      {"field", map_to_json(s.field)},
      {"stable_set", vector_to_json(s.stable_set)},
      {"saddle_set", vector_to_json(s.saddle_set)},
      {"forward", map_to_json(s.change.forward)},
      {"inverse", map_to_json(s.change.inverse)},
      {"pulled_back", map_to_json(s.pulled_back)},
  };
}

json box_to_json(const BoxSpec& b) {
  return {{"lower", b.lower}, {"upper", b.upper}, {"derivation", b.derivation}};
}

json cert_report_to_json(const CertReport& r) {
  json points = json::array();
  for (const auto& c : r.per_point) {
    json minors = json::array();
    for (const auto& m : c.minors) minors.push_back(rational_to_json(m));
    points.push_back({{"point", vector_to_json(c.point)},
                      {"gradient", vector_to_json(c.gradient)},
                      {"gradient_residual_zero", c.gradient_zero},
                      {"minors", std::move(minors)},
                      {"pass", c.pass}});
  }
  const auto& s = r.spurious_search;
  return {
      {"per_point", std::move(points)},
      {"spurious_search",
       {{"seeds_used", s.seeds_used},
        {"singular", s.singular},
        {"unconfirmed", s.unconfirmed},
        {"converged_points", s.converged_points},
        {"all_within_tol_of_X", s.all_within_tol_of_X},
        {"all_of_X_found", s.all_of_X_found}}},
      {"box", box_to_json(r.box)},
      {"overall_pass", r.overall_pass},
  };
}

json flow_trace_to_json(const FlowTrace& t) {
  json classified = {{"kind", to_string(t.outcome)}};
  if (t.target) classified["index"] = *t.target;
  return {{"start", t.start},
          {"steps", t.steps},
          {"end", t.end},
          {"classified", std::move(classified)},
          {"final_grad_norm", t.final_grad_norm},
          {"time", t.time},
          {"halvings", t.halvings}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
  if (!out) throw ParseError("write failed: " + path);
}

}  // namespace morseforge
