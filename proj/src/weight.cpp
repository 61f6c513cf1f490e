#include "sublin/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sublin/classify.hpp"
#include "sublin/error.hpp"

namespace sublin {

WeightSpec WeightSpec::constant(double c, std::optional<Domain> domain) {
  WeightSpec s;
  s.id = "constant";
  s.descriptor = {{"builtin", "constant"}, {"params", {{"c", c}}}};
  if (domain) {
    s.descriptor["params"]["x0"] = domain->lower;
    s.descriptor["params"]["x1"] = domain->upper;
  }
  s.domain = domain;
  s.fn = [c](double) { return c; };
  return s;
}

std::vector<Component> positive_runs(std::span<const double> v) {
  std::vector<Component> out;
  std::size_t i = 0;
  while (i < v.size()) {
    if (v[i] > 0.0) {
      std::size_t j = i;
      while (j < v.size() && v[j] > 0.0) ++j;
      out.push_back({i, j});
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

Weight::Weight(WeightSpec spec, GridPtr grid)
    : spec_(std::move(spec)), grid_(std::move(grid)), samples_(grid_) {
  const double tol = 1e-12 * std::max(1.0, std::abs(grid_->upper()) + std::abs(grid_->lower()));
  if (spec_.domain && (grid_->lower() < spec_.domain->lower - tol || grid_->upper() > spec_.domain->upper + tol)) {
    std::ostringstream msg;
    msg << "sample_weight: grid domain [" << grid_->lower() << ", " << grid_->upper()
        << "] is not inside the weight domain [" << spec_.domain->lower << ", " << spec_.domain->upper
        << "] of '" << spec_.id << "'";
    throw Error(ErrorCode::evaluation_failure, msg.str());
  }
  for (std::size_t i = 0; i < grid_->size(); ++i) {
    const double x = grid_->node(i);
    const double v = spec_.fn(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "sample_weight: non-finite value of '" << spec_.id << "' at x = " << x;
      throw Error(ErrorCode::evaluation_failure, msg.str());
    }
    samples_.values[i] = v;
  }
  components_ = positive_runs(samples_.values);
  if (components_.empty())
    throw Error(ErrorCode::precondition_failed,
                "sample_weight: a+ vanishes at every node of the grid for '" + spec_.id + "'");
}

Field Weight::positive_part() const {
  Field out(grid_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(samples_[i], 0.0);
  return out;
}

Field Weight::negative_part() const {
  Field out(grid_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(-samples_[i], 0.0);
  return out;
}

Weight sample_weight(const WeightSpec& spec, GridPtr g) { return Weight(spec, std::move(g)); }

Weight scaled(const Weight& w, double c) {
  if (!(c > 0.0)) throw Error(ErrorCode::invalid_argument, "scaled: factor must be positive");
  WeightSpec s;
  s.id = "scaled";
  s.descriptor = {{"builtin", "scaled"}, {"params", {{"c", c}}}, {"inner", w.spec().descriptor}};
  s.domain = w.spec().domain;
  s.finitely_many_components = w.spec().finitely_many_components;
  s.fn = [inner = w.spec().fn, c](double x) { return c * inner(x); };
  return Weight(std::move(s), w.grid());
}

SolutionOperatorResult solution_operator(const Weight& w) {
  const Grid& g = *w.grid();
  SolutionOperatorResult out;
  out.value = solve_linear(g, w.samples());
  out.min = out.value.min();
  out.flux = boundary_flux(g, out.value);
  const Classification c = classify_positivity(g, out.value);
  out.positive = out.min > 0.0 && is_positive(c.kind);
  out.in_positive_cone_interior = out.positive && c.kind == Positivity::interior;
  return out;
}

namespace {

double decay_constant(const Weight& w, double alpha, double rho0) {
  const Grid& g = *w.grid();
  double c = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double d = g.boundary_distance(i);
    if (d >= rho0) continue;
    c = std::max(c, std::abs(w.samples()[i]) / std::pow(d, alpha));
  }
  return c;
}

}  // namespace

DecayCheck check_decay(const Weight& w, double alpha, double rho0) {
  DecayCheck out;
  GridPtr g = w.grid();
  out.sweep.push_back(decay_constant(w, alpha, rho0));
  for (int level = 0; level < 3; ++level) {
    g = g->refined();
    out.sweep.push_back(decay_constant(Weight(w.spec(), g), alpha, rho0));
  }
  out.constant = out.sweep.back();
  const bool finite = std::all_of(out.sweep.begin(), out.sweep.end(), [](double v) { return std::isfinite(v); });
  const double first = out.sweep.front();
  const double ratio = first > 0.0 ? out.sweep.back() / first : (out.sweep.back() > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  out.satisfied = finite && ratio < 1.5;
  return out;
}

}  // namespace sublin
