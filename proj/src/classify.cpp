#include "sublin/classify.hpp"

#include <algorithm>

#include "sublin/error.hpp"

namespace sublin {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::grid_mismatch: return "grid-mismatch";
    case ErrorCode::singular_system: return "singular-system";
    case ErrorCode::evaluation_failure: return "evaluation-failure";
    case ErrorCode::no_positive_eigenvalue: return "no-positive-eigenvalue";
    case ErrorCode::transversality_failure: return "transversality-failure";
    case ErrorCode::no_global_subsolution: return "no-global-subsolution";
    case ErrorCode::ordering_violated: return "ordering-violated";
    case ErrorCode::non_monotone: return "non-monotone";
    case ErrorCode::precondition_failed: return "precondition-failed";
    case ErrorCode::empty_constraint_set: return "empty-constraint-set";
    case ErrorCode::missing_tail_samples: return "missing-tail-samples";
    case ErrorCode::unknown_weight: return "unknown-weight";
    case ErrorCode::config_error: return "config-error";
  }
  return "unknown";
}

std::string_view to_string(Positivity p) {
  switch (p) {
    case Positivity::trivial: return "trivial";
    case Positivity::dead_core: return "dead-core";
    case Positivity::positive_not_interior: return "positive-not-P0";
    case Positivity::interior: return "P0";
  }
  return "unknown";
}

Classification classify_positivity(const Grid& g, const Field& u, const ClassifyOptions& opt) {
  require_on_grid(g, u, "classify_positivity");
  Classification out;
  const double sup = u.sup_norm();
  out.atol = std::max(opt.rel_atol * sup, opt.abs_floor);
  out.ftol = opt.flux_scale * g.h() * sup;
  out.flux = boundary_flux(g, u);
  if (sup <= out.atol) {
    out.kind = Positivity::trivial;
    return out;
  }
  std::size_t i = 0;
  while (i < u.size()) {
    if (u[i] <= out.atol) {
      std::size_t j = i;
      while (j < u.size() && u[j] <= out.atol) ++j;
      out.zero_runs.push_back({i, j, g.node(i), g.node(j - 1)});
      i = j;
    } else {
      ++i;
    }
  }
  if (!out.zero_runs.empty()) {
    out.kind = Positivity::dead_core;
  } else if (std::all_of(out.flux.begin(), out.flux.end(), [&](double f) { return f <= -out.ftol; })) {
    out.kind = Positivity::interior;
  } else {
    out.kind = Positivity::positive_not_interior;
  }
  return out;
}

}  // namespace sublin
