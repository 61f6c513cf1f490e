#include "sublin/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>

#include "sublin/error.hpp"
#include "sublin/kernels.hpp"
#include "sublin/spectrum.hpp"

namespace sublin {

namespace {

/// ∫ a (v⁺)^{q+1}
double constraint(const Weight& w, double q, std::span<const double> v) {
  std::vector<double> pw(v.size());
  kernels::parallel::weighted_power(w.values(), v, q + 1.0, pw);
  return kernels::parallel::dot(w.grid()->weights(), pw, std::vector<double>(v.size(), 1.0));
}

struct Descent {
  Field v;
  double dirichlet = 0.0;
  int iterations = 0;
  bool valid = false;
};

Descent constrained_descent(const Weight& w, double q, Field v) {
  const Grid& g = *w.grid();
  const std::size_t n = v.size();
  Descent out;
  double gv = constraint(w, q, v.values);
  if (!(gv > 0.0)) return out;
  for (double& x : v.values) x *= std::pow(gv, -1.0 / (q + 1.0));
  double d = dirichlet_integral(g, v);
  double tau = 1.0;
  std::vector<double> pw(n), trial(n);
  int it = 0;
  for (; it < 5000; ++it) {
    kernels::parallel::weighted_power(w.values(), v.values, q, pw);
    const std::vector<double> z = solve_thomas(g.laplacian(), pw);
    const double denom = kernels::parallel::dot(g.weights(), pw, z);
    if (!(denom > 0.0)) break;
    const double s = 1.0 / denom;
    bool accepted = false;
    double change = 0.0, d_new = d;
    while (tau >= 1e-8) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = std::max(0.0, v[i] - tau * (v[i] - s * z[i]));
      const double gt = constraint(w, q, trial);
      if (gt > 0.0) {
        const double c = std::pow(gt, -1.0 / (q + 1.0));
        for (double& x : trial) x *= c;
        Field tf(w.grid(), trial);
        d_new = dirichlet_integral(g, tf);
        if (d_new <= d * (1.0 + 1e-13)) {
          for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(trial[i] - v[i]));
          v.values.swap(tf.values);
          accepted = true;
          break;
        }
      }
      tau *= 0.5;
    }
    if (!accepted) break;
    const bool flat = std::abs(d - d_new) <= 1e-12 * d;
    d = d_new;
    tau = std::min(1.0, 2.0 * tau);
    if (flat && change <= 1e-6 * v.sup_norm()) {
      ++it;
      break;
    }
  }
  out.v = std::move(v);
  out.dirichlet = d;
  out.iterations = it;
  out.valid = true;
  return out;
}

Field random_start(const Weight& w, std::uint64_t seed) {
  const Grid& g = *w.grid();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> noise(g.size(), 0.0);
  for (const Component& c : w.components())
    for (std::size_t i = c.begin; i < c.end; ++i) noise[i] = dist(rng);
  std::vector<double> ones(g.size(), 1.0);
  const Tridiagonal smoother = g.laplacian().shifted(ones);
  return Field(w.grid(), solve_thomas(smoother, noise));
}

Field best_component_phi(const Weight& w) {
  std::optional<EigenPair> best;
  for (const Component& c : w.components()) {
    EigenPair ep = principal_eigenpair(w, c);
    if (!best || ep.lambda1 < best->lambda1) best = std::move(ep);
  }
  return best->phi1;
}

}  // namespace

double energy(const Weight& w, double q, const Field& u) {
  const Grid& g = *w.grid();
  require_on_grid(g, u, "energy");
  std::vector<double> pos(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) pos[i] = std::max(u[i], 0.0);
  return 0.5 * dirichlet_integral(g, u) - constraint(w, q, pos) / (q + 1.0);
}

Field ray_optimal(const Weight& w, double q, const Field& v) {
  require_on_grid(*w.grid(), v, "ray_optimal");
  std::vector<double> pos(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) pos[i] = std::max(v[i], 0.0);
  const double gv = constraint(w, q, pos);
  const double dv = dirichlet_integral(*w.grid(), v);
  Field out(w.grid());
  if (!(gv > 0.0) || !(dv > 0.0)) return out;
  const double t = std::pow(gv / dv, 1.0 / (1.0 - q));
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = t * v[i];
  return out;
}

GroundState minimize_energy(const Weight& w, double q, const SolveConfig& cfg, int n_starts, std::uint64_t seed) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::invalid_argument, "minimize_energy: need 0 < q < 1");
  if (n_starts < 0) throw Error(ErrorCode::invalid_argument, "minimize_energy: n_starts must be >= 0");
  const std::size_t total = static_cast<std::size_t>(n_starts) + 1;
  std::vector<StartRecord> records(total);
  std::vector<Field> starts(total);
  starts[0] = best_component_phi(w);
  records[0].kind = "phi1";
  for (std::size_t k = 1; k < total; ++k) {
    records[k].kind = "random";
    records[k].seed = seed + k;
    starts[k] = random_start(w, records[k].seed);
  }

  std::vector<std::exception_ptr> errors(total);
  std::vector<double> scales(total, 0.0);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t kk = 0; kk < static_cast<std::ptrdiff_t>(total); ++kk) {
    const std::size_t k = static_cast<std::size_t>(kk);
    try {
      Descent d = constrained_descent(w, q, starts[k]);
      StartRecord& r = records[k];
      r.descent_iterations = d.iterations;
      if (!d.valid) {
        r.status = SolveStatus::trivial_solution;
        continue;
      }
      r.constrained_energy = d.dirichlet;
      // −Δv ≈ μ a v^q with μ = ∫|∇v|² / ∫a v^{q+1} and the constraint at 1.
      const double scale = std::pow(d.dirichlet, -1.0 / (1.0 - q));
      scales[k] = scale;
      for (double& x : d.v.values) x *= scale;
      SolveReport rep = newton_solve(w, q, d.v, cfg);
      r.status = rep.status;
      r.residual = rep.residual;
      r.energy = energy(w, q, rep.solution);
      r.u = std::move(rep.solution);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (std::none_of(records.begin(), records.end(), [](const StartRecord& r) { return r.constrained_energy > 0.0; }))
    throw Error(ErrorCode::empty_constraint_set,
                "minimize_energy: ∫a v^{q+1} <= 0 for every start (a+ negligible on the grid)");

  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < total; ++k) {
    const StartRecord& r = records[k];
    if (r.status != SolveStatus::converged || !(r.u.sup_norm() > 0.0)) continue;
    if (!best || r.energy < records[*best].energy - 1e-10) best = k;
  }
  if (!best) throw Error(ErrorCode::precondition_failed, "minimize_energy: no start converged to a nontrivial solution");

  GroundState gs;
  gs.q = q;
  gs.best_start = *best;
  gs.u = records[*best].u;
  gs.energy = records[*best].energy;
  gs.multiplier_scale = scales[*best];
  gs.polish = newton_solve(w, q, gs.u, cfg);
  gs.starts = std::move(records);
  return gs;
}

bool maximality_check(const GroundState& gs, const std::vector<Field>& others, double tol) {
  const double abs_tol = tol * std::max(gs.u.sup_norm(), std::numeric_limits<double>::min());
  for (const Field& v : others) {
    if (v.size() != gs.u.size()) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (gs.u[i] < v[i] - abs_tol) return false;
  }
  return true;
}

std::vector<Field> verification_basket(const Weight& w, double q) {
  std::vector<Field> basket;
  basket.emplace_back(w.grid());
  Field s = solve_linear(*w.grid(), w.samples());
  for (double& v : s.values) v = std::max(v, 0.0);
  basket.push_back(ray_optimal(w, q, s));
  Field phi;
  try {
    phi = principal_eigenpair(w).phi1;
  } catch (const Error&) {
    phi = best_component_phi(w);
  }
  basket.push_back(ray_optimal(w, q, phi));
  return basket;
}

}  // namespace sublin
