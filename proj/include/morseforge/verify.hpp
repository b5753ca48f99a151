#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "morseforge/float_eval.hpp"
#include "morseforge/matrix.hpp"
#include "morseforge/poly.hpp"

namespace morseforge {

using FloatVector = std::vector<double>;

std::vector<FloatVector> to_float(const std::vector<RationalVector>& points);

/// Axis-aligned search region for the numeric checks.
struct BoxSpec {
  FloatVector lower;
  FloatVector upper;
  std::string derivation;

  /// Bounding box of the points, half-widths doubled about the center, plus an
  /// absolute margin of 1 on every side. Throws DimensionError on an empty set.
  static BoxSpec around(const std::vector<FloatVector>& points);
  static BoxSpec around(const std::vector<RationalVector>& points);
  static BoxSpec from_bounds(FloatVector lower, FloatVector upper, std::string derivation);

  /// Same center, half-widths multiplied by `factor`.
  BoxSpec inflated(double factor) const;

  std::size_t dimension() const { return lower.size(); }
  bool contains(std::span<const double> x) const;
};

// ---------------------------------------------------------------------------
// Finite differences

enum class FdArithmetic {
  /// x and h are taken as the rationals they represent; the symbolic gradient
  /// and the difference quotient are evaluated exactly, so the result is the
  /// truncation error of the central difference alone.
  exact,
  /// Everything in double precision, rounding included.
  floating,
};

/// Normwise relative deviation between the symbolic gradient of p and the
/// central difference (p(x + h e_i) - p(x - h e_i)) / 2h:
///   max_i |g_i - d_i| / max_i |g_i|    (or max_i |d_i| when g = 0).
/// Returns +inf when any evaluation is non-finite.
double fd_gradient_check(const MultiPoly& p, std::span<const double> x, double h,
                         FdArithmetic arithmetic = FdArithmetic::exact);

// ---------------------------------------------------------------------------
// Newton search for critical points

struct NewtonConfig {
  std::size_t seeds_per_axis = 32;
  double residual_tol = 1e-12;
  double dedup_tol = 1e-8;
  int max_iterations = 100;
  /// A converged point counts as "at X" when within this distance.
  double match_tol = 1e-6;
  int exact_refinements = 3;
  /// Step halvings tried per iteration to decrease ||grad||; when none does,
  /// the full Newton step is taken. 0 gives plain Newton.
  int max_backtracks = 10;
};

enum class NewtonStatus { converged, singular, max_iterations, escaped, unconfirmed };

struct NewtonOutcome {
  NewtonStatus status;
  FloatVector point;
  int iterations = 0;
  double residual = 0.0;
};

/// Newton's method on grad(x) = 0 with the symbolic Jacobian of `grad`.
class NewtonSolver {
 public:
  NewtonSolver(const PolyMap& grad, NewtonConfig config);

  /// Damped Newton (see max_backtracks). Float iteration stops once ||grad||
  /// < residual_tol, or once ||grad|| is below the rounding floor of its own
  /// float evaluation with a Newton step below 1e-6 (1 + ||x||). The candidate
  /// is then confirmed by up to `exact_refinements` Newton corrections
  /// computed from the exact gradient and Jacobian at the (exactly
  /// represented) float point; it is reported converged only if a correction
  /// falls below 1e-10 (1 + ||x||), and `unconfirmed` otherwise.
  NewtonOutcome solve(std::span<const double> seed) const;

  const NewtonConfig& config() const { return config_; }

 private:
  bool confirm(FloatVector& x) const;

  std::size_t n_;
  PolyMap grad_;
  std::vector<std::vector<MultiPoly>> jacobian_;
  FloatPolyMap system_;  // n gradient components followed by n*n Jacobian entries
  FloatPolyMap gradient_;
  NewtonConfig config_;
};

struct NewtonSearchResult {
  std::size_t seeds_used = 0;
  std::size_t singular = 0;
  std::size_t unconfirmed = 0;
  std::size_t not_converged = 0;
  std::vector<FloatVector> converged_points;  // deduplicated, in seed order
};

/// Runs Newton from the cell centers of a seeds_per_axis^n grid over `box`.
NewtonSearchResult newton_search(const PolyMap& grad, const BoxSpec& box,
                                 const NewtonConfig& config);

// ---------------------------------------------------------------------------
// Certification

struct PointCertificate {
  RationalVector point;
  RationalVector gradient;  // exact; all zero at a genuine critical point
  bool gradient_zero = false;
  std::vector<Rational> minors;  // leading principal minors of the exact Hessian
  bool pass = false;
};

struct SpuriousSearch {
  std::size_t seeds_used = 0;
  std::size_t singular = 0;
  std::size_t unconfirmed = 0;
  std::vector<FloatVector> converged_points;
  bool all_within_tol_of_X = false;
  /// Every point of X was reached from some seed (completeness, informational).
  bool all_of_X_found = false;
};

struct CertReport {
  std::vector<PointCertificate> per_point;
  SpuriousSearch spurious_search;
  BoxSpec box;
  bool overall_pass = false;
};

/// Exact check at each candidate point (gradient zero, Hessian positive
/// definite by Sylvester) plus a Newton sweep over `box`.
CertReport certify(const MultiPoly& p, const std::vector<RationalVector>& points,
                   const BoxSpec& box, const NewtonConfig& config);

// ---------------------------------------------------------------------------
// Linearization

struct EigenSigns {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t ambiguous = 0;

  friend bool operator==(const EigenSigns&, const EigenSigns&) = default;
};

/// Counts eigenvalues (real parts, for non-symmetric input) by sign; |lambda| <=
/// tol counts as ambiguous.
EigenSigns eigen_signs(const FloatMatrix& m, double tol);

// ---------------------------------------------------------------------------
// Flows

struct FlowConfig {
  double dt = 1e-3;
  double t_max = 200.0;
  double grad_tol = 1e-8;
  double point_tol = 1e-6;
  /// A step is rejected when it leaves the escape box, produces a non-finite
  /// state, multiplies ||field|| by more than max_growth, or (when it moves
  /// farther than point_tol) has h * L above max_stiffness, with L the local
  /// Lipschitz estimate from the first two RK4 stages. Each rejection retries
  /// with half the previous step.
  int max_halvings = 4;
  double max_growth = 2.0;
  double max_stiffness = 2.0;
};

enum class FlowOutcome { converged, max_time_reached, diverged };

std::string to_string(FlowOutcome outcome);

struct FlowTrace {
  FloatVector start;
  std::size_t steps = 0;
  FloatVector end;
  FlowOutcome outcome = FlowOutcome::max_time_reached;
  std::optional<std::size_t> target;  // index into the target list when converged
  double final_grad_norm = 0.0;
  double time = 0.0;
  std::size_t halvings = 0;
};

/// Called with the state after every accepted step (and once with the start).
using FlowObserver = std::function<void(std::size_t step, double t, std::span<const double> x)>;

/// Classical fixed-step RK4 for x' = field(x). Stops as soon as ||field(x)|| <
/// grad_tol and x is within point_tol of some target. A step that is still
/// rejected after max_halvings retries ends the trace as diverged.
FlowTrace integrate_flow(const FloatPolyMap& field, std::span<const double> start,
                         const std::vector<FloatVector>& targets, const BoxSpec& escape_box,
                         const FlowConfig& config, const FlowObserver& observer = {});

FlowTrace integrate_flow(const PolyMap& field, std::span<const double> start,
                         const std::vector<FloatVector>& targets, const BoxSpec& escape_box,
                         const FlowConfig& config);

struct BasinSample {
  std::vector<FlowTrace> traces;
  std::size_t converged = 0;
  std::size_t max_time_reached = 0;
  std::size_t diverged = 0;

  double fraction_converged() const {
    return traces.empty() ? 0.0 : static_cast<double>(converged) / static_cast<double>(traces.size());
  }
};

/// Deterministic stream of uniform doubles in [0, 1) from a 64-bit seed.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  /// 53 random bits scaled to [0, 1); identical on every platform.
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Integrates from `num_seeds` uniform random starts in `box`; a trace counts
/// when it converges to one of `targets`. The escape box is box inflated 10x.
BasinSample basin_sample(const FloatPolyMap& field, const std::vector<FloatVector>& targets,
                         const BoxSpec& box, std::size_t num_seeds, std::uint64_t seed,
                         const FlowConfig& config, const FlowObserver& observer = {});

/// Labels for a rectangular grid of starts: target index, or -1 when unresolved.
std::vector<int> basin_labels(const FloatPolyMap& field, const std::vector<FloatVector>& targets,
                              const std::vector<FloatVector>& starts, const BoxSpec& escape_box,
                              const FlowConfig& config);

}  // namespace morseforge
