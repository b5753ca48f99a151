#include "morseforge/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "morseforge/io.hpp"

namespace morseforge {

namespace {

constexpr const char* hypothesis_note =
    "hypothesis violated: the input must be a finite set of distinct points in R^n with n >= 2";

struct UnsupportedError : Error {
  using Error::Error;
};

struct Options {
  std::string input;
  std::string output;
  std::vector<std::string> box;
  NewtonConfig newton;
  FlowConfig flow;
  std::string start;
  std::size_t resolution = 0;
  std::size_t basin_seeds = 0;
  std::uint64_t seed = 0;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("MORSEFORGE_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw ParseError(std::string("MORSEFORGE_SEED is not an unsigned integer: ") + env);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& s) {
  if (s.find('/') != std::string::npos) return to_double(parse_rational(s));
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || !std::isfinite(v)) throw ParseError("not a finite number: '" + s + "'");
  return v;
}

FloatVector parse_float_vector(const std::string& s) {
  FloatVector v;
  for (const auto& item : split(s, ',')) v.push_back(parse_number(item));
  return v;
}

void emit(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.output.empty()) {
    out << text;
  } else {
    write_text_file(opt.output, text);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

BoxSpec resolve_box(const Options& opt, const std::vector<RationalVector>& points, std::size_t n) {
  if (opt.box.empty()) return BoxSpec::around(points);
  if (opt.box.size() != n) {
    throw ParseError("--box needs one lo,hi pair per axis (" + std::to_string(n) + ")");
  }
  FloatVector lo, hi;
  for (const auto& pair : opt.box) {
    const FloatVector b = parse_float_vector(pair);
    if (b.size() != 2 || !(b[0] < b[1])) throw ParseError("--box entry must be lo,hi with lo < hi: " + pair);
    lo.push_back(b[0]);
    hi.push_back(b[1]);
  }
  return BoxSpec::from_bounds(std::move(lo), std::move(hi), "user override");
}

int cmd_synthesize(const Options& opt, std::ostream& out) {
  const PointSet xs = pointset_from_json(read_json_file(opt.input));
  emit(opt, dump(synthesis_to_json(synthesize(xs))), out);
  return exit_pass;
}

int cmd_saddle_field(const Options& opt, std::ostream& out) {
  const PointSet xs = pointset_from_json(read_json_file(opt.input));
  emit(opt, dump(saddle_field_to_json(xs, build_saddle_field(xs))), out);
  return exit_pass;
}

// Compares what the bundle claims against values recomputed from its P.
json bundle_consistency(const json& bundle, const SynthesisResult& r) {
  json checks = json::object();
  checks["neg_gradient_matches_p"] = (negative_gradient(r.p_poly) == r.grad_field);
  checks["p_equals_q_after_forward"] = (compose(r.q, r.change.forward) == r.p_poly);

  bool records = true;
  const auto& stated = bundle.at("hessians");
  if (!stated.is_array() || stated.size() != r.input.size()) {
    records = false;
  } else {
    for (std::size_t i = 0; i < stated.size() && records; ++i) {
      const RationalVector& x = r.input.points()[i];
      const RationalMatrix h = hessian_at(r.p_poly, x);
      const std::vector<Rational> minors = leading_principal_minors(h);
      records = vector_from_json(stated[i].at("point")) == x &&
                matrix_from_json(stated[i].at("hessian")) == h &&
                vector_from_json(stated[i].at("minors")) == minors;
    }
  }
  checks["hessian_records_match"] = records;
  return checks;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const json bundle = read_json_file(opt.input);
  const SynthesisResult r = synthesis_from_json(bundle);
  const std::size_t n = r.input.dimension();
  if (r.p_poly.dimension() != n) throw ParseError("P dimension does not match the input set");

  json consistency;
  try {
    consistency = bundle_consistency(bundle, r);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed hessian records: ") + e.what());
  }

  const BoxSpec box = resolve_box(opt, r.input.points(), n);
  const CertReport report = certify(r.p_poly, r.input.points(), box, opt.newton);

  bool consistent = true;
  for (const auto& [key, value] : consistency.items()) consistent = consistent && value.get<bool>();

  json j = cert_report_to_json(report);
  j["bundle_consistency"] = consistency;
  j["newton_config"] = {{"seeds_per_axis", opt.newton.seeds_per_axis},
                        {"residual_tol", opt.newton.residual_tol},
                        {"dedup_tol", opt.newton.dedup_tol},
                        {"max_iterations", opt.newton.max_iterations},
                        {"match_tol", opt.newton.match_tol}};

  if (opt.basin_seeds > 0) {
    const FloatPolyMap field(r.grad_field);
    const BasinSample s =
        basin_sample(field, to_float(r.input.points()), box, opt.basin_seeds, opt.seed, opt.flow);
    j["basin_sample"] = {{"seed", opt.seed},
                         {"num_seeds", opt.basin_seeds},
                         {"converged", s.converged},
                         {"max_time_reached", s.max_time_reached},
                         {"diverged", s.diverged},
                         {"fraction_converged", s.fraction_converged()}};
  }

  const bool pass = report.overall_pass && consistent;
  j["verified"] = pass;
  emit(opt, dump(j), out);
  return pass ? exit_pass : exit_failure;
}

int cmd_flow(const Options& opt, std::ostream& out) {
  const json doc = read_json_file(opt.input);
  const std::string kind = doc.is_object() ? doc.value("kind", "") : "";

  std::optional<PolyMap> field;
  std::vector<RationalVector> targets;
  std::vector<RationalVector> saddles;
  if (kind == "synthesis_bundle") {
    SynthesisResult r = synthesis_from_json(doc);
    targets = r.input.points();
    field = std::move(r.grad_field);
  } else if (kind == "saddle_field") {
    const PointSet xs = pointset_from_json(doc.at("input"));
    targets = xs.points();
    for (const auto& s : doc.at("saddle_points")) saddles.push_back(vector_from_json(s));
    field = map_from_json(doc.at("pulled_back"));
  } else {
    throw ParseError("flow input must be a synthesis bundle or a saddle field file");
  }

  const std::size_t n = field->domain_dim();
  const FloatVector start = parse_float_vector(opt.start);
  if (start.size() != n) throw ParseError("--start needs " + std::to_string(n) + " coordinates");
  const BoxSpec escape = BoxSpec::around(targets).inflated(10.0);
  if (!escape.contains(start)) throw ParseError("--start lies outside the escape box (standard box inflated 10x)");

  const FloatPolyMap compiled(*field);
  const FlowTrace trace = integrate_flow(compiled, start, to_float(targets), escape, opt.flow);
  json j = flow_trace_to_json(trace);
  j["flow_config"] = {{"dt", opt.flow.dt},
                      {"t_max", opt.flow.t_max},
                      {"grad_tol", opt.flow.grad_tol},
                      {"point_tol", opt.flow.point_tol},
                      {"max_halvings", opt.flow.max_halvings},
                      {"max_growth", opt.flow.max_growth},
                      {"max_stiffness", opt.flow.max_stiffness}};

  if (trace.outcome != FlowOutcome::converged) {
    const auto float_saddles = to_float(saddles);
    for (std::size_t s = 0; s < float_saddles.size(); ++s) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(trace.end[i] - float_saddles[s][i]));
      if (d < 1e-3) {
        j["note"] = "trace ended at saddle " + std::to_string(s);
        j["saddle_index"] = s;
      }
    }
  }
  emit(opt, dump(j), out);
  return trace.outcome == FlowOutcome::converged ? exit_pass : exit_failure;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_export_grid(const Options& opt, std::ostream& out) {
  const SynthesisResult r = synthesis_from_json(read_json_file(opt.input));
  if (r.input.dimension() != 2) {
    throw UnsupportedError("export-grid supports n = 2 only (got n = " + std::to_string(r.input.dimension()) + ")");
  }
  if (opt.resolution < 8) throw ParseError("--resolution must be at least 8");

  const BoxSpec box = BoxSpec::around(r.input.points());
  const std::size_t res = opt.resolution;
  std::vector<FloatVector> nodes;
  nodes.reserve(res * res);
  auto coord = [&](std::size_t axis, std::size_t i) {
    return box.lower[axis] + (box.upper[axis] - box.lower[axis]) * static_cast<double>(i) /
                                 static_cast<double>(res - 1);
  };
  for (std::size_t iy = 0; iy < res; ++iy) {
    for (std::size_t ix = 0; ix < res; ++ix) nodes.push_back({coord(0, ix), coord(1, iy)});
  }

  const FloatPolyMap p_eval(PolyMap(2, {r.p_poly}));
  const std::vector<int> labels =
      basin_labels(FloatPolyMap(r.grad_field), to_float(r.input.points()), nodes, box.inflated(10.0), opt.flow);

  std::string csv = "x,y,P,basin_label\n";
  double value = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    p_eval.evaluate(nodes[i], std::span<double>(&value, 1));
    csv += format_double(nodes[i][0]) + "," + format_double(nodes[i][1]) + "," + format_double(value) + "," +
           std::to_string(labels[i]) + "\n";
  }
  emit(opt, csv, out);
  return exit_pass;
}

void add_flow_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--dt", opt.flow.dt, "RK4 step")->check(CLI::PositiveNumber);
  cmd->add_option("--t-max", opt.flow.t_max, "integration horizon")->check(CLI::PositiveNumber);
  cmd->add_option("--grad-tol", opt.flow.grad_tol, "field norm below which a trace may stop")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--point-tol", opt.flow.point_tol, "distance to a target counted as arrival")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-halvings", opt.flow.max_halvings, "step halvings before a trace is diverged")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-stiffness", opt.flow.max_stiffness, "largest accepted dt * local Lipschitz estimate")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact synthesis of polynomials with prescribed local minima", "morseforge"};
  app.require_subcommand(1);

  auto io = [&](CLI::App* cmd, bool needs_output) {
    cmd->add_option("-i,--input", opt.input, "input file")->required();
    auto* o = cmd->add_option("-o,--output", opt.output, "output file (default: stdout)");
    if (needs_output) o->required();
  };

  auto* synth = app.add_subcommand("synthesize", "point set JSON -> audit bundle");
  io(synth, true);

  auto* verify = app.add_subcommand("verify", "recompute and certify a bundle");
  io(verify, false);
  verify->add_option("--box", opt.box, "lo,hi per axis (default: standard box)");
  verify->add_option("--seeds-per-axis", opt.newton.seeds_per_axis, "Newton seed grid size")
      ->check(CLI::Range(2, 10000));
  verify->add_option("--residual-tol", opt.newton.residual_tol)->check(CLI::PositiveNumber);
  verify->add_option("--dedup-tol", opt.newton.dedup_tol)->check(CLI::PositiveNumber);
  verify->add_option("--max-iterations", opt.newton.max_iterations)->check(CLI::PositiveNumber);
  verify->add_option("--match-tol", opt.newton.match_tol)->check(CLI::PositiveNumber);
  verify->add_option("--basin-seeds", opt.basin_seeds, "also sample the gradient flow from N random starts");
  verify->add_option("--seed", opt.seed, "RNG seed (default: $MORSEFORGE_SEED or 0)");
  add_flow_options(verify, opt);

  auto* flow = app.add_subcommand("flow", "integrate -grad P (or a saddle field) from one start");
  io(flow, false);
  flow->add_option("--start", opt.start, "x,y,...")->required();
  add_flow_options(flow, opt);

  auto* saddle = app.add_subcommand("saddle-field", "point set JSON -> field with saddles between minima");
  io(saddle, true);

  auto* grid = app.add_subcommand("export-grid", "CSV raster of P and basin labels (n = 2)");
  io(grid, false);
  grid->add_option("--resolution", opt.resolution, "nodes per axis (>= 8)")->required();
  add_flow_options(grid, opt);

  try {
    opt.seed = default_seed();
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  }

  try {
    if (synth->parsed()) return cmd_synthesize(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
    if (flow->parsed()) return cmd_flow(opt, out);
    if (saddle->parsed()) return cmd_saddle_field(opt, out);
    if (grid->parsed()) return cmd_export_grid(opt, out);
  } catch (const HypothesisError& e) {
    err << hypothesis_note << ": " << e.what() << "\n";
    return exit_hypothesis;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return exit_unsupported;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const DimensionError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse;
  }
  return exit_parse;
}

}  // namespace morseforge
