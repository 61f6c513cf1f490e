#pragma once

#include <cmath>
#include <functional>

#include "doctest.h"
#include "sublin/solver.hpp"

namespace sublin::test {

inline double max_error(const Field& u, const std::function<double(double)>& exact) {
  double e = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) e = std::max(e, std::abs(u[i] - exact(u.grid->node(i))));
  return e;
}

/// Every converged solve in the suite goes through here so both a-priori
/// assertions are checked wherever they apply.
inline void require_bounds(const SolveReport& rep) {
  REQUIRE(rep.converged());
  if (rep.bounds.upper_checked) CHECK_MESSAGE(rep.bounds.upper_ok, "H1 norm " << rep.bounds.h1_norm << " above " << rep.bounds.upper_ceiling);
  if (rep.bounds.lower_checked) CHECK_MESSAGE(rep.bounds.lower_ok, "component floor margin " << rep.bounds.lower_margin);
}

}  // namespace sublin::test
