#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sublin/grid.hpp"
#include "sublin/weight.hpp"

namespace sublin::corpus {

/// Explicit dead-core construction on (−2, 2): a cubic p glued C² to
/// f(x) = (x+1)^r / r at x = 1, with p(2) = 0 and r = 2/(1−q).
///
/// Coefficients p(x) = c3 x³ + c2 x² + c1 x + c0:
///   c3 = −2^{r−3}(8/r + r + 3)      c2 = 2^{r−1}(r + 6/r + 2)
///   c1 = −2^{r−3}(5r + 24/r + 3)    c0 = 2^{r−2}(8/r + r − 1)
/// The weight is −(r−1) r^q on [−1, 1] and −p''(|x|)/p(|x|)^q for 1 ≤ |x| < 2;
/// u1 = 0 on [−2, −1], f on [−1, 1], p on [1, 2], and u2(x) = u1(−x).
struct Prop51Data {
  double q = 0.0;
  double r_exp = 0.0;
  double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;

  WeightSpec weight;
  /// The weight with a(x) replaced by a(−1) on [−2, −1]; u1 solves it with a
  /// single positivity component.
  WeightSpec modified_weight;

  double p(double x) const;
  double dp(double x) const;
  double d2p(double x) const;
  double f(double x) const;
  double df(double x) const;
  double d2f(double x) const;
  double plateau() const;  ///< −(r−1) r^q

  double u1(double x) const;
  double u2(double x) const { return u1(-x); }
  Field u1_field(const GridPtr& g) const;
  Field u2_field(const GridPtr& g) const;
};

Prop51Data prop51_build(double q);

/// Parses a weight descriptor:
///   {"builtin": id, "params": {...}, ...nested specs...}
///   {"constant": c}
///   {"piecewise": [{"interval": [lo, hi], "expr": "poly|sin|cos|const", "params": {...}}, ...]}
///   {"tabulated": {"x": [...], "a": [...]}}
/// An optional "domain": [x0, x1] overrides the descriptor's domain.
/// Throws ErrorCode::unknown_weight / ErrorCode::invalid_argument.
WeightSpec parse_weight(const nlohmann::json& descriptor);

/// builtin(id, params) for the registered ids; nested weights (scaled.inner,
/// a_lambda_eps.a1/a2) are passed in `nested`.
WeightSpec builtin(const std::string& id, const nlohmann::json& params = nlohmann::json::object(),
                   const nlohmann::json& nested = nlohmann::json::object());

struct BuiltinInfo {
  std::string id;
  std::string summary;
  nlohmann::json params;  ///< parameter name -> {"default", "doc"}
};

const std::vector<BuiltinInfo>& builtin_catalog();

/// Symmetric grid on (−2, 2) with a node at 0 (odd n_interior).
GridPtr prop51_grid(std::size_t n_interior);

struct InvariantResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Invariant suite for the dead-core construction at q on a grid of n nodes.
std::vector<InvariantResult> prop51_check(double q, std::size_t n_interior);

}  // namespace sublin::corpus
