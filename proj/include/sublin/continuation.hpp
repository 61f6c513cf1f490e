#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sublin/ground_state.hpp"
#include "sublin/solver.hpp"
#include "sublin/spectrum.hpp"

namespace sublin {

struct CurveSample {
  double q = 0.0;  ///< exponent; for singular branches this is −γ
  Field u;
  double residual = 0.0;
  Positivity classification = Positivity::trivial;
  double sup_norm = 0.0;
  int iterations = 0;
  BoundsCheck bounds;
};

struct SolutionCurve {
  std::vector<CurveSample> samples;
  bool truncated = false;
  double last_good_q = 0.0;
  std::string failure;  ///< reason for truncation
  /// Maximal runs of consecutive samples classified P°, as [q_first, q_last].
  std::vector<std::pair<double, double>> interior_runs;
};

struct ContinuationConfig {
  SolveConfig solve;
  int max_bisections = 6;
  int ground_state_starts = 5;
  std::uint64_t seed = 0;
};

/// Natural continuation over an increasing q grid in (0,1). The first
/// sample starts from the monotone iteration between [(1−q)S(a)]^{1/(1−q)}
/// and k S(a⁺) when S(a) > 0, otherwise from the ground state, or from
/// `init` when given. Later samples use the previous solution rescaled along
/// its ray as predictor; failed steps are bisected up to max_bisections times.
SolutionCurve continue_curve(const Weight& w, const std::vector<double>& q_grid, const ContinuationConfig& cfg = {},
                             const std::optional<Field>& init = std::nullopt);

/// n points on [qmin, qmax]; with geometric_tail the gaps 1 − q are
/// geometric, which resolves the q → 1 end.
std::vector<double> make_q_grid(double qmin, double qmax, int steps, bool geometric_tail);

struct Q1Limit {
  double lambda1 = 0.0;
  double t_star = 0.0;
  double profile_sup = 0.0;  ///< ‖t* φ₁‖_∞
  std::vector<double> q;
  std::vector<double> g;         ///< ‖λ₁^{1/(1−q)} u − t*φ₁‖_∞ / ‖t*φ₁‖_∞
  std::vector<double> sup_norm;
  std::string regime;  ///< converges-to-t*phi1 | vanishes | blows-up | undetermined
};

struct RegimeThresholds {
  double tail_start = 0.9;
  double gap = 0.1;
  double growth = 10.0;
};

/// Regime of the q → 1 tail from the (q, sup-norm, g) sequences alone.
std::string classify_regime(const std::vector<double>& q, const std::vector<double>& sup_norm,
                            const std::vector<double>& g, const RegimeThresholds& th = {});

/// Throws ErrorCode::missing_tail_samples without samples at q ≥ tail_start.
Q1Limit asymptotic_q1(const Weight& w, const SolutionCurve& curve, const RegimeThresholds& th = {});

/// λ₁^{1/(1−q)} u − t*φ₁ relative gap for one field.
double rescaled_gap(const EigenPair& ep, double t_star, double q, const Field& u);

struct Q0Limit {
  Field reference;  ///< S(a)
  std::vector<double> q;
  std::vector<double> gap;  ///< ‖u(q) − S(a)‖_∞
  std::vector<bool> bracket_ok;
  std::vector<double> bracket_margin;  ///< min of u − sub and super − u
};

/// Gap sequence and bracketing check over samples with q ≤ q_max. A sample
/// at q = 0 is compared with S(a) only. Throws
/// ErrorCode::precondition_failed if S(a) ≤ 0 at some node.
Q0Limit asymptotic_q0(const Weight& w, const SolutionCurve& curve, double q_max = 0.2, double tol = 1e-8);

struct SingularOptions {
  double decay_alpha = 1.0;
  double decay_rho0_fraction = 0.1;  ///< strip width as a fraction of the domain length
};

/// Continuation of −Δu = a u^{−γ} from u(0) = S(a) along gamma_grid
/// (starting at 0). Samples store q = −γ. Stops at the first γ where Newton
/// fails after bisection or the result leaves P°. Throws
/// ErrorCode::precondition_failed if S(a) ∉ P° or the decay diagnostic fails.
SolutionCurve singular_continue(const Weight& w, const std::vector<double>& gamma_grid,
                                const ContinuationConfig& cfg = {}, const SingularOptions& opt = {});

}  // namespace sublin
