#pragma once

#include <optional>

#include "sublin/grid.hpp"
#include "sublin/weight.hpp"

namespace sublin {

/// Principal positive eigenpair of −Δφ = λ a φ on a node range with
/// Dirichlet conditions at its ends.
struct EigenPair {
  double lambda1 = 0.0;
  Field phi1;           ///< zero outside the subdomain, ∫_{sub} φ² = 1
  Component subdomain;
  double residual = 0.0;  ///< ‖Aφ − λaφ‖_∞ / (λ‖aφ‖_∞) on the subdomain
  int iterations = 0;     ///< bisection plus inverse-iteration steps
};

/// λ₁ by Sturm-sequence bisection on the pencil (A, diag a), φ₁ by shifted
/// inverse iteration. Throws ErrorCode::no_positive_eigenvalue when the
/// pencil has no positive eigenvalue on the range (a⁺ ≡ 0 there) or the
/// iteration budget is exhausted.
EigenPair principal_eigenpair(const Weight& w, std::optional<Component> sub = std::nullopt);

/// ∫_{sub} a φ₁².
double transversality(const Weight& w, const EigenPair& ep);

/// exp(−∫aφ₁² log φ₁ / ∫aφ₁²). Throws ErrorCode::transversality_failure
/// when ∫aφ₁² ≤ 0.
double t_star(const Weight& w, const EigenPair& ep);
double t_star(const Weight& w);

/// t [(log t) ∫aφ₁² + ∫aφ₁² log φ₁]. Throws ErrorCode::invalid_argument for t ≤ 0.
double phi_q_slice(const Weight& w, const EigenPair& ep, double t);

}  // namespace sublin
