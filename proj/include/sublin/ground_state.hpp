#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sublin/solver.hpp"

namespace sublin {

/// Record of one descent start.
struct StartRecord {
  std::string kind;          ///< "phi1" or "random"
  std::uint64_t seed = 0;    ///< RNG seed of a random start
  int descent_iterations = 0;
  double constrained_energy = 0.0;  ///< ∫|∇v|² at the end of the descent, ∫a v^{q+1} = 1
  SolveStatus status = SolveStatus::max_iterations;
  double residual = 0.0;
  double energy = 0.0;              ///< I_q of the polished field
  Field u;
};

struct GroundState {
  double q = 0.0;
  Field u;
  double energy = 0.0;
  double multiplier_scale = 0.0;  ///< μ^{-1/(1-q)} applied to the constrained minimizer
  std::size_t best_start = 0;
  SolveReport polish;
  std::vector<StartRecord> starts;
};

/// I_q(u) = ½∫|∇u|² − 1/(q+1) ∫ a (u⁺)^{q+1}.
double energy(const Weight& w, double q, const Field& u);

/// v scaled by the t > 0 minimizing I_q(t v): t^{1-q} = ∫a(v⁺)^{q+1} / ∫|∇v|².
/// Returns the zero field when ∫a(v⁺)^{q+1} ≤ 0.
Field ray_optimal(const Weight& w, double q, const Field& v);

/// Minimizes ∫|∇v|² on {∫a(v⁺)^{q+1} = 1, v ≥ 0} by H¹-preconditioned
/// projected descent from φ₁ of the best component and n_starts random
/// positive starts, rescales by the multiplier, polishes with Newton and
/// returns the lowest-energy converged result (index order breaks ties).
/// Throws ErrorCode::empty_constraint_set if no start has ∫a v^{q+1} > 0 and
/// ErrorCode::precondition_failed if no start converges.
GroundState minimize_energy(const Weight& w, double q, const SolveConfig& cfg, int n_starts,
                            std::uint64_t seed = 0);

/// True iff gs.u ≥ v − tol (tol relative to ‖gs.u‖_∞) at every node for every v.
bool maximality_check(const GroundState& gs, const std::vector<Field>& others, double tol = 1e-8);

/// Fields the ground state must not be beaten by: 0, ray-optimal S(a)⁺ and
/// ray-optimal φ₁ (whole domain if it exists, else the best component).
std::vector<Field> verification_basket(const Weight& w, double q);

}  // namespace sublin
