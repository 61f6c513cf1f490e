#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "sublin/grid.hpp"

namespace sublin {

enum class Positivity { trivial, dead_core, positive_not_interior, interior };

std::string_view to_string(Positivity p);

/// True for the two classes with u > atol at every node.
constexpr bool is_positive(Positivity p) noexcept {
  return p == Positivity::positive_not_interior || p == Positivity::interior;
}

struct ClassifyOptions {
  /// Relative node threshold: atol = max(rel_atol * ‖u‖_∞, abs_floor).
  double rel_atol = 1e-8;
  double abs_floor = 1e-14;
  /// Flux threshold ftol = flux_scale * h * ‖u‖_∞.
  double flux_scale = 1.0;
};

/// A run of nodes [begin, end) with u <= atol, plus its coordinate extent.
struct ZeroRun {
  std::size_t begin = 0;
  std::size_t end = 0;
  double x_first = 0.0;
  double x_last = 0.0;
};

struct Classification {
  Positivity kind = Positivity::trivial;
  std::vector<ZeroRun> zero_runs;
  std::vector<double> flux;
  double atol = 0.0;
  double ftol = 0.0;
};

/// trivial / dead-core / positive-not-P° / P° classification of u ≥ 0.
Classification classify_positivity(const Grid& g, const Field& u, const ClassifyOptions& opt = {});

}  // namespace sublin
