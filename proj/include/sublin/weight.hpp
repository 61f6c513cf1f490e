#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sublin/grid.hpp"

namespace sublin {

/// Closed interval [lower, upper] on which a weight descriptor is defined.
struct Domain {
  double lower = 0.0;
  double upper = 1.0;
};

/// Analytic description of a sign-changing coefficient a(x). The descriptor is
/// the JSON object the weight was parsed from (or an equivalent one for weights
/// built in code); `fn` evaluates it. Radial weights are functions of r.
struct WeightSpec {
  std::string id;
  nlohmann::json descriptor;
  std::optional<Domain> domain;
  std::function<double(double)> fn;
  /// Ω₊ has finitely many components; always true for the discrete structure,
  /// kept as metadata for the maximality contract.
  bool finitely_many_components = true;

  double operator()(double x) const { return fn(x); }

  static WeightSpec constant(double c, std::optional<Domain> domain = std::nullopt);
};

/// One maximal run [begin, end) of nodes with a > 0.
struct Component {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
};

/// A WeightSpec sampled on a Grid, with the positivity components of Ω₊.
class Weight {
 public:
  Weight(WeightSpec spec, GridPtr grid);

  const WeightSpec& spec() const noexcept { return spec_; }
  const GridPtr& grid() const noexcept { return grid_; }
  const Field& samples() const noexcept { return samples_; }
  std::span<const double> values() const noexcept { return samples_.values; }
  const std::vector<Component>& components() const noexcept { return components_; }

  Field positive_part() const;
  Field negative_part() const;

 private:
  WeightSpec spec_;
  GridPtr grid_;
  Field samples_;
  std::vector<Component> components_;
};

/// Samples spec on g and scans the strict-positivity runs.
/// Throws ErrorCode::evaluation_failure on a domain mismatch or a non-finite
/// sample, and ErrorCode::precondition_failed when a⁺ vanishes identically.
Weight sample_weight(const WeightSpec& spec, GridPtr g);

/// c * a, on the same grid.
Weight scaled(const Weight& w, double c);

/// Maximal runs of strictly positive entries.
std::vector<Component> positive_runs(std::span<const double> v);

struct SolutionOperatorResult {
  Field value;                     ///< S(a), the solution of −Δφ = a
  double min = 0.0;
  std::vector<double> flux;        ///< outward normal derivatives
  bool positive = false;           ///< S(a) > 0 at every node
  bool in_positive_cone_interior = false;  ///< S(a) ∈ P°
};

SolutionOperatorResult solution_operator(const Weight& w);

struct DecayCheck {
  double constant = 0.0;            ///< sup |a|/d^alpha on the strip, finest grid
  bool satisfied = false;
  std::vector<double> sweep;        ///< constants over successive refinements
};

/// Empirical (H₁)-type decay diagnostic: sup over nodes with d(x,∂Ω) < rho0
/// of |a(x)|/d(x,∂Ω)^alpha, recomputed over three grid halvings. Satisfied
/// when every value is finite and the last/first ratio is below 1.5.
DecayCheck check_decay(const Weight& w, double alpha, double rho0);

}  // namespace sublin
