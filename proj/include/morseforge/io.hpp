#pragma once

#include <string>

#include <json.hpp>

#include "morseforge/coord_change.hpp"
#include "morseforge/poly.hpp"
#include "morseforge/synth.hpp"
#include "morseforge/verify.hpp"

namespace morseforge {

using nlohmann::json;

// All rationals travel as decimal strings ("p" or "p/q"); polynomial
// coefficients as separate "num"/"den" strings. Readers throw ParseError.

json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json vector_to_json(const RationalVector& v);
RationalVector vector_from_json(const json& j);

json matrix_to_json(const RationalMatrix& m);
RationalMatrix matrix_from_json(const json& j);

/// {"dimension": n, "terms": [{"exponents": [...], "num": "..", "den": ".."}, ...]}
/// with terms in descending graded-lex order.
json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const json& j);

/// {"domain_dim": n, "components": [poly, ...]}
json map_to_json(const PolyMap& m);
PolyMap map_from_json(const json& j);

/// {"dimension": n, "points": [["num/den", ...], ...]}. Hypothesis violations
/// (n < 2, duplicates) surface as HypothesisError, shape problems as ParseError.
json pointset_to_json(const PointSet& xs);
PointSet pointset_from_json(const json& j);

/// Audit bundle: every intermediate object plus per-point Hessians and minors.
json synthesis_to_json(const SynthesisResult& r);
SynthesisResult synthesis_from_json(const json& j);

/// Saddle field file: the transformed and pulled-back fields plus the input
/// set, its saddles mapped back to original coordinates.
json saddle_field_to_json(const PointSet& xs, const SaddleField& s);

json box_to_json(const BoxSpec& b);
json cert_report_to_json(const CertReport& r);
json flow_trace_to_json(const FlowTrace& t);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace morseforge
