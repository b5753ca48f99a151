#include "morseforge/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace morseforge {

namespace {

constexpr double kFloorStep = 1e-6;

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

bool near_any(std::span<const double> x, const std::vector<FloatVector>& set, double tol) {
  return std::any_of(set.begin(), set.end(),
                     [&](const FloatVector& p) { return distance(x, p) < tol; });
}

// Rounding-error multiplier for a polynomial evaluated in double; generous
// enough for degree ~30 and a few thousand pairwise-summed terms.
constexpr double kRoundingFactor = 64.0 * std::numeric_limits<double>::epsilon();

}  // namespace

std::vector<FloatVector> to_float(const std::vector<RationalVector>& points) {
  std::vector<FloatVector> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    FloatVector f;
    f.reserve(p.size());
    for (const auto& c : p) f.push_back(c.get_d());
    out.push_back(std::move(f));
  }
  return out;
}

BoxSpec BoxSpec::around(const std::vector<FloatVector>& points) {
  if (points.empty()) throw DimensionError("BoxSpec::around: empty point set");
  const std::size_t n = points.front().size();
  FloatVector lo = points.front();
  FloatVector hi = points.front();
  for (const auto& p : points) {
    if (p.size() != n) throw DimensionError("BoxSpec::around: mixed dimensions");
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double center = 0.5 * (lo[i] + hi[i]);
    const double half = 0.5 * (hi[i] - lo[i]);
    lo[i] = center - 2.0 * half - 1.0;
    hi[i] = center + 2.0 * half + 1.0;
  }
  return from_bounds(std::move(lo), std::move(hi), "bbox(X) half-widths x2, margin 1 per axis");
}

BoxSpec BoxSpec::around(const std::vector<RationalVector>& points) {
  return around(to_float(points));
}

BoxSpec BoxSpec::from_bounds(FloatVector lower, FloatVector upper, std::string derivation) {
  if (lower.size() != upper.size() || lower.empty()) throw DimensionError("BoxSpec: bad bounds");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) throw DimensionError("BoxSpec: lower must be < upper on every axis");
  }
  return BoxSpec{std::move(lower), std::move(upper), std::move(derivation)};
}

BoxSpec BoxSpec::inflated(double factor) const {
  BoxSpec b = *this;
  for (std::size_t i = 0; i < dimension(); ++i) {
    const double center = 0.5 * (lower[i] + upper[i]);
    const double half = 0.5 * (upper[i] - lower[i]);
    b.lower[i] = center - factor * half;
    b.upper[i] = center + factor * half;
  }
  b.derivation = derivation + "; inflated x" + std::to_string(factor);
  return b;
}

bool BoxSpec::contains(std::span<const double> x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

double fd_gradient_check(const MultiPoly& p, std::span<const double> x, double h,
                         FdArithmetic arithmetic) {
  const std::size_t n = p.dimension();
  if (x.size() != n) throw DimensionError("fd_gradient_check: point length mismatch");
  if (!(h > 0)) throw DimensionError("fd_gradient_check: step must be positive");
  if (!all_finite(x) || !std::isfinite(h)) return std::numeric_limits<double>::infinity();

  std::vector<MultiPoly> grad;
  for (std::size_t i = 0; i < n; ++i) grad.push_back(partial(p, i));

  FloatVector g(n), d(n);
  if (arithmetic == FdArithmetic::exact) {
    RationalVector xq;
    for (double v : x) xq.push_back(from_double(v));
    const Rational hq = from_double(h);
    RationalVector probe = xq;
    for (std::size_t i = 0; i < n; ++i) {
      probe[i] = xq[i] + hq;
      const Rational plus = eval_rational(p, probe);
      probe[i] = xq[i] - hq;
      const Rational minus = eval_rational(p, probe);
      probe[i] = xq[i];
      g[i] = eval_rational(grad[i], xq).get_d();
      d[i] = Rational((plus - minus) / (2 * hq)).get_d();
    }
  } else {
    g = FloatPolyMap(grad)(x);
    const FloatPolyMap value({p});
    FloatVector probe(x.begin(), x.end());
    for (std::size_t i = 0; i < n; ++i) {
      probe[i] = x[i] + h;
      const double plus = value(probe)[0];
      probe[i] = x[i] - h;
      const double minus = value(probe)[0];
      probe[i] = x[i];
      d[i] = (plus - minus) / (2.0 * h);
    }
  }
  if (!all_finite(g) || !all_finite(d)) return std::numeric_limits<double>::infinity();

  double dev = 0.0, scale = 0.0, dscale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dev = std::max(dev, std::abs(g[i] - d[i]));
    scale = std::max(scale, std::abs(g[i]));
    dscale = std::max(dscale, std::abs(d[i]));
  }
  if (scale > 0) return dev / scale;
  return dscale;
}

NewtonSolver::NewtonSolver(const PolyMap& grad, NewtonConfig config)
    : n_(grad.domain_dim()), grad_(grad), jacobian_(jacobian(grad)), config_(config) {
  if (grad.codomain_dim() != n_) throw DimensionError("NewtonSolver: gradient map must be square");
  std::vector<MultiPoly> polys = grad.components();
  for (const auto& row : jacobian_)
    for (const auto& entry : row) polys.push_back(entry);
  system_ = FloatPolyMap(polys);
  gradient_ = FloatPolyMap(grad);
}

bool NewtonSolver::confirm(FloatVector& x) const {
  for (int it = 0; it < config_.exact_refinements; ++it) {
    if (!all_finite(x)) return false;
    RationalVector xq;
    xq.reserve(n_);
    for (double v : x) xq.push_back(from_double(v));
    const RationalVector g = eval_rational(grad_, xq);
    RationalMatrix jac(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) jac(i, j) = eval_rational(jacobian_[i][j], xq);
    if (determinant(jac) == 0) return false;
    const RationalMatrix inv = inverse(jac);
    double step_norm = 0.0;
    FloatVector next = x;
    for (std::size_t i = 0; i < n_; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n_; ++j) s += inv(i, j) * g[j];
      const double sd = s.get_d();
      step_norm += sd * sd;
      next[i] = Rational(xq[i] - s).get_d();
    }
    step_norm = std::sqrt(step_norm);
    x = next;
    if (step_norm <= 1e-10 * (1.0 + norm2(x))) return true;
  }
  return false;
}

NewtonOutcome NewtonSolver::solve(std::span<const double> seed) const {
  using Mat = Eigen::MatrixXd;
  using Vec = Eigen::VectorXd;
  const std::size_t m = n_ + n_ * n_;
  FloatVector x(seed.begin(), seed.end());
  FloatVector values(m), magnitude(m);
  Mat jac(n_, n_);
  Vec g(n_);

  FloatVector trial(n_), trial_gradient(n_);

  NewtonOutcome out{NewtonStatus::max_iterations, x, 0, 0.0};
  for (int it = 0; it <= config_.max_iterations; ++it) {
    if (!all_finite(x)) {
      out.status = NewtonStatus::escaped;
      return out;
    }
    system_.evaluate(x, values, magnitude);
    if (!all_finite(values)) {
      out.status = NewtonStatus::escaped;
      return out;
    }
    for (std::size_t i = 0; i < n_; ++i) g(i) = values[i];
    const double residual = g.norm();
    const double floor =
        kRoundingFactor * norm2(std::span<const double>(magnitude.data(), n_));
    out.point = x;
    out.iterations = it;
    out.residual = residual;
    if (residual < config_.residual_tol) {
      out.status = confirm(out.point) ? NewtonStatus::converged : NewtonStatus::unconfirmed;
      return out;
    }
    if (it == config_.max_iterations) break;

    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) jac(i, j) = values[n_ + i * n_ + j];
    Eigen::FullPivLU<Mat> lu(jac);
    if (!lu.isInvertible()) {
      out.status = NewtonStatus::singular;
      return out;
    }
    const Vec step = lu.solve(g);
    if (!step.allFinite()) {
      out.status = NewtonStatus::singular;
      return out;
    }
    if (residual <= floor && step.norm() <= kFloorStep * (1.0 + norm2(x))) {
      out.status = confirm(out.point) ? NewtonStatus::converged : NewtonStatus::unconfirmed;
      return out;
    }
    double lambda = 1.0;
    bool decreased = false;
    for (int b = 0; b < config_.max_backtracks && !decreased; ++b, lambda *= 0.5) {
      for (std::size_t i = 0; i < n_; ++i) trial[i] = x[i] - lambda * step(i);
      if (!all_finite(trial)) continue;
      gradient_.evaluate(trial, trial_gradient);
      decreased = all_finite(trial_gradient) && norm2(trial_gradient) < residual;
    }
    if (decreased) {
      x.swap(trial);
    } else {
      for (std::size_t i = 0; i < n_; ++i) x[i] -= step(i);
    }
  }
  out.status = NewtonStatus::max_iterations;
  return out;
}

NewtonSearchResult newton_search(const PolyMap& grad, const BoxSpec& box,
                                 const NewtonConfig& config) {
  if (config.seeds_per_axis < 2) throw DimensionError("newton_search: seeds_per_axis must be >= 2");
  if (box.dimension() != grad.domain_dim()) throw DimensionError("newton_search: box dimension");
  const NewtonSolver solver(grad, config);
  const std::size_t n = box.dimension();
  const std::size_t per_axis = config.seeds_per_axis;

  NewtonSearchResult result;
  std::vector<std::size_t> index(n, 0);
  FloatVector seed(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      const double width = box.upper[i] - box.lower[i];
      seed[i] = box.lower[i] + (static_cast<double>(index[i]) + 0.5) * width / static_cast<double>(per_axis);
    }
    ++result.seeds_used;
    const NewtonOutcome o = solver.solve(seed);
    switch (o.status) {
      case NewtonStatus::converged:
        if (!near_any(o.point, result.converged_points, config.dedup_tol)) {
          result.converged_points.push_back(o.point);
        }
        break;
      case NewtonStatus::singular:
        ++result.singular;
        break;
      case NewtonStatus::unconfirmed:
        ++result.unconfirmed;
        break;
      default:
        ++result.not_converged;
        break;
    }
    std::size_t axis = 0;
    while (axis < n && ++index[axis] == per_axis) index[axis++] = 0;
    if (axis == n) break;
  }
  return result;
}

CertReport certify(const MultiPoly& p, const std::vector<RationalVector>& points,
                   const BoxSpec& box, const NewtonConfig& config) {
  const std::size_t n = p.dimension();
  std::vector<MultiPoly> grad;
  for (std::size_t i = 0; i < n; ++i) grad.push_back(partial(p, i));
  const PolyMap grad_map(n, grad);

  CertReport report;
  report.box = box;
  bool all_points_pass = !points.empty();
  for (const auto& x : points) {
    PointCertificate c;
    c.point = x;
    c.gradient = eval_rational(grad_map, x);
    c.gradient_zero = std::all_of(c.gradient.begin(), c.gradient.end(),
                                  [](const Rational& r) { return r == 0; });
    c.minors = leading_principal_minors(hessian_at(p, x));
    c.pass = c.gradient_zero &&
             std::all_of(c.minors.begin(), c.minors.end(), [](const Rational& r) { return r > 0; });
    all_points_pass = all_points_pass && c.pass;
    report.per_point.push_back(std::move(c));
  }

  const NewtonSearchResult search = newton_search(grad_map, box, config);
  const auto targets = to_float(points);
  auto& s = report.spurious_search;
  s.seeds_used = search.seeds_used;
  s.singular = search.singular;
  s.unconfirmed = search.unconfirmed;
  s.converged_points = search.converged_points;
  s.all_within_tol_of_X = std::all_of(
      s.converged_points.begin(), s.converged_points.end(),
      [&](const FloatVector& c) { return near_any(c, targets, config.match_tol); });
  s.all_of_X_found = std::all_of(targets.begin(), targets.end(), [&](const FloatVector& t) {
    return near_any(t, s.converged_points, config.match_tol);
  });

  report.overall_pass = all_points_pass && s.all_within_tol_of_X;
  return report;
}

EigenSigns eigen_signs(const FloatMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("eigen_signs: matrix must be square");
  const std::size_t n = m.rows();
  Eigen::MatrixXd a(n, n);
  bool symmetric = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = m(i, j);
      if (m(i, j) != m(j, i)) symmetric = false;
    }
  Eigen::VectorXd lambda;
  if (symmetric) {
    lambda = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
  } else {
    lambda = Eigen::EigenSolver<Eigen::MatrixXd>(a, false).eigenvalues().real();
  }
  EigenSigns s;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) <= tol) ++s.ambiguous;
    else if (lambda(i) > 0) ++s.positive;
    else ++s.negative;
  }
  return s;
}

std::string to_string(FlowOutcome outcome) {
  switch (outcome) {
    case FlowOutcome::converged: return "converged_to";
    case FlowOutcome::max_time_reached: return "max_time_reached";
    case FlowOutcome::diverged: return "diverged";
  }
  return "unknown";
}

namespace {

// One RK4 step; false when a stage leaves the finite range. `stiffness` gets
// h * ||k2 - k1|| / ||(h/2) k1||, i.e. h times a local Lipschitz estimate.
bool rk4_step(const FloatPolyMap& field, std::span<const double> x, std::span<const double> k1,
              double h, FloatVector& out, double& stiffness) {
  const std::size_t n = x.size();
  thread_local FloatVector k2, k3, k4, tmp;
  k2.resize(n);
  k3.resize(n);
  k4.resize(n);
  tmp.resize(n);

  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  if (!all_finite(tmp)) return false;
  field.evaluate(tmp, k2);
  double spread = 0.0, base = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    spread += (k2[i] - k1[i]) * (k2[i] - k1[i]);
    base += k1[i] * k1[i];
  }
  stiffness = base > 0.0 ? 2.0 * std::sqrt(spread / base) : 0.0;
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  if (!all_finite(tmp)) return false;
  field.evaluate(tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
  if (!all_finite(tmp)) return false;
  field.evaluate(tmp, k4);

  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return all_finite(out);
}

}  // namespace

FlowTrace integrate_flow(const FloatPolyMap& field, std::span<const double> start,
                         const std::vector<FloatVector>& targets, const BoxSpec& escape_box,
                         const FlowConfig& config, const FlowObserver& observer) {
  if (!(config.dt > 0) || !(config.t_max > 0)) throw DimensionError("integrate_flow: dt and t_max must be positive");
  const std::size_t n = field.dimension();
  if (start.size() != n) throw DimensionError("integrate_flow: start length mismatch");

  FlowTrace trace;
  trace.start.assign(start.begin(), start.end());
  trace.end = trace.start;
  if (!all_finite(start)) {
    trace.outcome = FlowOutcome::diverged;
    trace.final_grad_norm = std::numeric_limits<double>::infinity();
    return trace;
  }

  FloatVector x = trace.start;
  FloatVector k1(n), next(n), k_next(n);
  double t = 0.0;
  if (observer) observer(0, t, x);
  field.evaluate(x, k1);

  // Stop once the remaining time is below a rounding-level sliver of dt.
  const double time_eps = 1e-9 * config.dt;
  while (true) {
    const double speed = norm2(k1);
    trace.final_grad_norm = speed;
    if (!std::isfinite(speed)) {
      trace.outcome = FlowOutcome::diverged;
      break;
    }
    if (speed < config.grad_tol) {
      std::size_t best = targets.size();
      double best_d = config.point_tol;
      for (std::size_t i = 0; i < targets.size(); ++i) {
        const double d = distance(x, targets[i]);
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      if (best < targets.size()) {
        trace.outcome = FlowOutcome::converged;
        trace.target = best;
        break;
      }
    }
    if (t >= config.t_max - time_eps) {
      trace.outcome = FlowOutcome::max_time_reached;
      break;
    }

    double h = std::min(config.dt, config.t_max - t);
    const double growth_limit = config.max_growth * std::max(speed, config.grad_tol);
    bool accepted = false;
    for (int attempt = 0; attempt <= config.max_halvings; ++attempt) {
      if (attempt > 0) {
        h *= 0.5;
        ++trace.halvings;
      }
      double stiffness = 0.0;
      if (!rk4_step(field, x, k1, h, next, stiffness) || !escape_box.contains(next)) continue;
      if (stiffness > config.max_stiffness && h * speed > config.point_tol) continue;
      field.evaluate(next, k_next);
      const double next_speed = norm2(k_next);
      if (std::isfinite(next_speed) && next_speed <= growth_limit) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      trace.outcome = FlowOutcome::diverged;
      break;
    }
    x.swap(next);
    k1.swap(k_next);
    t += h;
    ++trace.steps;
    if (observer) observer(trace.steps, t, x);
  }
  trace.end = x;
  trace.time = t;
  return trace;
}

FlowTrace integrate_flow(const PolyMap& field, std::span<const double> start,
                         const std::vector<FloatVector>& targets, const BoxSpec& escape_box,
                         const FlowConfig& config) {
  return integrate_flow(FloatPolyMap(field), start, targets, escape_box, config);
}

BasinSample basin_sample(const FloatPolyMap& field, const std::vector<FloatVector>& targets,
                         const BoxSpec& box, std::size_t num_seeds, std::uint64_t seed,
                         const FlowConfig& config, const FlowObserver& observer) {
  const BoxSpec escape = box.inflated(10.0);
  UniformStream stream(seed);
  BasinSample sample;
  sample.traces.reserve(num_seeds);
  FloatVector start(box.dimension());
  for (std::size_t s = 0; s < num_seeds; ++s) {
    for (std::size_t i = 0; i < start.size(); ++i) {
      start[i] = box.lower[i] + stream.next() * (box.upper[i] - box.lower[i]);
    }
    FlowTrace trace = integrate_flow(field, start, targets, escape, config, observer);
    switch (trace.outcome) {
      case FlowOutcome::converged: ++sample.converged; break;
      case FlowOutcome::max_time_reached: ++sample.max_time_reached; break;
      case FlowOutcome::diverged: ++sample.diverged; break;
    }
    sample.traces.push_back(std::move(trace));
  }
  return sample;
}

std::vector<int> basin_labels(const FloatPolyMap& field, const std::vector<FloatVector>& targets,
                              const std::vector<FloatVector>& starts, const BoxSpec& escape_box,
                              const FlowConfig& config) {
  std::vector<int> labels;
  labels.reserve(starts.size());
  for (const auto& s : starts) {
    const FlowTrace trace = integrate_flow(field, s, targets, escape_box, config);
    labels.push_back(trace.outcome == FlowOutcome::converged ? static_cast<int>(*trace.target) : -1);
  }
  return labels;
}

}  // namespace morseforge
