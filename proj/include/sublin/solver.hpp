#pragma once

#include <string_view>

#include "sublin/classify.hpp"
#include "sublin/grid.hpp"
#include "sublin/weight.hpp"

namespace sublin {

struct SolveConfig {
  double tol_residual = 1e-10;  ///< relative, see relative_residual()
  int max_iter = 200;
  /// Floor in the u^{q-1} Jacobian terms, relative to ‖u‖_∞. Discrete dead
  /// cores decay super-exponentially, so this must sit far below 1e-12. The
  /// monotone shift never uses a floor below 1e-12.
  double eps_reg = 1e-100;
  double backtrack = 0.5;
  double armijo = 1e-4;
  /// Smallest accepted line-search step.
  double min_step = 1e-12;
  ClassifyOptions classify;
  /// Evaluate the a-priori ceiling and the componentwise floor on converged
  /// results (q in (0,1) only).
  bool check_bounds = true;
};

enum class SolveStatus { converged, trivial_solution, max_iterations, line_search_failed };

std::string_view to_string(SolveStatus s);

/// Outcome of the a-priori assertions on one solution.
struct BoundsCheck {
  bool upper_checked = false;
  bool upper_ok = true;
  double h1_norm = 0.0;       ///< sqrt(uᵀKu)
  double upper_ceiling = 0.0;
  bool lower_checked = false;
  bool lower_ok = true;
  /// min over components and nodes of u − λ₁(a,Ω′)^{-1/(1-q)} φ′ (φ′ with max 1).
  double lower_margin = 0.0;
};

struct SolveReport {
  Field solution;
  SolveStatus status = SolveStatus::max_iterations;
  int iterations = 0;
  double residual = 0.0;  ///< relative residual of the unregularized equation
  Classification classification;
  BoundsCheck bounds;

  bool converged() const noexcept { return status == SolveStatus::converged; }
};

/// −Δu − a u^q nodewise. q = 0 gives the linear problem, q < 0 the singular
/// one (requires u > 0). For non-integer q > 0, negative entries throw
/// ErrorCode::invalid_argument.
Field residual(const Weight& w, double q, const Field& u);

/// ‖F(u)‖_∞ / max(‖−Δu‖_∞, ‖a u^q‖_∞), 0 for u ≡ 0.
double relative_residual(const Weight& w, double q, const Field& u);

/// Damped Newton with Armijo backtracking on ½‖F‖². Iterates are clipped to
/// u ≥ 0 for q > 0 and kept strictly positive for q < 0. A zero start, or an
/// iterate that collapses to zero, ends with SolveStatus::trivial_solution.
SolveReport newton_solve(const Weight& w, double q, const Field& init, const SolveConfig& cfg = {});

/// Monotone iteration u ← (−Δ + M)⁻¹(a u^q + M u) ascending from sub, with a
/// nodewise shift M ≥ q a⁻ u^{q-1} on [sub, super]; finishes with a Newton
/// polish once increments are small. Throws ErrorCode::ordering_violated if
/// sub ≰ super and ErrorCode::non_monotone if a step still decreases after
/// the 10M retry.
SolveReport monotone_iterate(const Weight& w, double q, const Field& sub, const Field& super,
                             const SolveConfig& cfg = {});

/// [(1−q) S(a)]^{1/(1−q)}. Throws ErrorCode::no_global_subsolution if S(a) ≤ 0
/// at some node, and ErrorCode::precondition_failed if the discrete
/// subsolution defect exceeds the O(h²) slack.
Field make_subsolution(const Weight& w, double q);

/// max over components Ω′ of λ₁(a,Ω′)^{-1/(1-q)} φ′ (φ′ scaled to max 1),
/// zero outside Ω₊.
Field component_subsolution(const Weight& w, double q);

/// k with k S(a⁺) a supersolution: max(‖S(a⁺)‖^{q/(1−q)}, ‖S(a⁺)‖^{1/(1−q)}) (1 + 1e-6).
double supersolution_constant(const Weight& w, double q);
Field make_supersolution(const Weight& w, double q);

/// (max(1, C′ ‖a⁺‖_{L¹}))^{1/(1−q0)} with C′ = max(1, max diag K⁻¹), a ceiling
/// for the discrete H¹ norm of every nonnegative solution at q ≤ q0.
double apriori_upper(const Weight& w, double q0);

/// Runs both a-priori assertions; the floor only for positive classifications.
BoundsCheck check_bounds(const Weight& w, double q, const Field& u, const Classification& c);

}  // namespace sublin
