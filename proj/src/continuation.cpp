#include "sublin/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sublin/error.hpp"
#include "sublin/kernels.hpp"

namespace sublin {

namespace {

/// Previous solution rescaled to the ray-optimal amplitude for exponent q:
/// s^{1−q} = ⟨Au, a u^q⟩ / ‖Au‖².
Field ray_predictor(const Weight& w, double q, const Field& u) {
  const std::size_t n = u.size();
  std::vector<double> au(n), pw(n);
  const Tridiagonal& a = w.grid()->laplacian();
  kernels::parallel::tridiag_apply(a.lower, a.diag, a.upper, u.values, au);
  kernels::parallel::weighted_power(w.values(), u.values, q, pw);
  const double num = kernels::parallel::dot({}, au, pw);
  const double den = kernels::parallel::dot({}, au, au);
  Field out = u;
  if (num > 0.0 && den > 0.0 && q < 1.0) {
    const double s = std::pow(num / den, 1.0 / (1.0 - q));
    if (std::isfinite(s) && s > 0.0)
      for (double& v : out.values) v *= s;
  }
  return out;
}

bool acceptable(const SolveReport& rep) { return rep.converged() && rep.solution.sup_norm() > 0.0; }

CurveSample to_sample(double q, const SolveReport& rep) {
  CurveSample s;
  s.q = q;
  s.u = rep.solution;
  s.residual = rep.residual;
  s.classification = rep.classification.kind;
  s.sup_norm = rep.solution.sup_norm();
  s.iterations = rep.iterations;
  s.bounds = rep.bounds;
  return s;
}

/// Steps from (q_from, u_from) to q_to, halving the step on failure. The
/// singular branch passes exponents −γ, so "forward" means decreasing
/// exponent there; the step logic only needs the signed distance.
std::optional<SolveReport> advance(const Weight& w, double q_from, const Field& u_from, double q_to,
                                   const ContinuationConfig& cfg, bool predict, bool require_interior) {
  double cur_q = q_from;
  Field cur_u = u_from;
  double step = q_to - q_from;
  int halvings = 0;
  std::optional<SolveReport> last;
  while (cur_q != q_to) {
    double target = cur_q + step;
    if ((step > 0.0 && target >= q_to) || (step < 0.0 && target <= q_to)) target = q_to;
    const Field guess = predict ? ray_predictor(w, target, cur_u) : cur_u;
    SolveReport rep;
    bool ok = false;
    try {
      rep = newton_solve(w, target, guess, cfg.solve);
      ok = acceptable(rep) && (!require_interior || rep.classification.kind == Positivity::interior);
    } catch (const Error&) {
      ok = false;
    }
    if (ok) {
      cur_q = target;
      cur_u = rep.solution;
      last = std::move(rep);
    } else {
      if (++halvings > cfg.max_bisections) return std::nullopt;
      step *= 0.5;
    }
  }
  return last;
}

void fill_interior_runs(SolutionCurve& c) {
  c.interior_runs.clear();
  std::optional<std::pair<double, double>> run;
  for (const CurveSample& s : c.samples) {
    if (s.classification == Positivity::interior) {
      if (run)
        run->second = s.q;
      else
        run = std::make_pair(s.q, s.q);
    } else if (run) {
      c.interior_runs.push_back(*run);
      run.reset();
    }
  }
  if (run) c.interior_runs.push_back(*run);
}

SolveReport first_sample(const Weight& w, double q, const ContinuationConfig& cfg, const std::optional<Field>& init) {
  if (init) return newton_solve(w, q, *init, cfg.solve);
  try {
    const Field sub = make_subsolution(w, q);
    const Field super = make_supersolution(w, q);
    SolveReport rep = monotone_iterate(w, q, sub, super, cfg.solve);
    if (acceptable(rep)) return rep;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::no_global_subsolution && e.code() != ErrorCode::precondition_failed &&
        e.code() != ErrorCode::non_monotone && e.code() != ErrorCode::ordering_violated)
      throw;
  }
  GroundState gs = minimize_energy(w, q, cfg.solve, cfg.ground_state_starts, cfg.seed);
  return gs.polish;
}

}  // namespace

std::vector<double> make_q_grid(double qmin, double qmax, int steps, bool geometric_tail) {
  if (!(qmin > 0.0 && qmax < 1.0 && qmin < qmax) || steps < 2)
    throw Error(ErrorCode::invalid_argument, "make_q_grid: need 0 < qmin < qmax < 1 and steps >= 2");
  std::vector<double> q(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) / (steps - 1);
    q[static_cast<std::size_t>(k)] =
        geometric_tail ? 1.0 - (1.0 - qmin) * std::pow((1.0 - qmax) / (1.0 - qmin), t) : qmin + t * (qmax - qmin);
  }
  q.front() = qmin;
  q.back() = qmax;
  return q;
}

SolutionCurve continue_curve(const Weight& w, const std::vector<double>& q_grid, const ContinuationConfig& cfg,
                             const std::optional<Field>& init) {
  if (q_grid.empty()) throw Error(ErrorCode::invalid_argument, "continue_curve: empty q grid");
  for (std::size_t k = 0; k < q_grid.size(); ++k) {
    if (!(q_grid[k] > 0.0 && q_grid[k] < 1.0))
      throw Error(ErrorCode::invalid_argument, "continue_curve: q values must lie in (0, 1)");
    if (k > 0 && !(q_grid[k] > q_grid[k - 1]))
      throw Error(ErrorCode::invalid_argument, "continue_curve: q grid must be strictly increasing");
  }
  SolutionCurve curve;
  SolveReport rep = first_sample(w, q_grid[0], cfg, init);
  if (!acceptable(rep)) {
    curve.truncated = true;
    curve.failure = "first sample did not converge (" + std::string(to_string(rep.status)) + ")";
    return curve;
  }
  curve.samples.push_back(to_sample(q_grid[0], rep));
  curve.last_good_q = q_grid[0];
  for (std::size_t k = 1; k < q_grid.size(); ++k) {
    const CurveSample& prev = curve.samples.back();
    auto next = advance(w, prev.q, prev.u, q_grid[k], cfg, true, false);
    if (!next) {
      curve.truncated = true;
      std::ostringstream msg;
      msg << "Newton failed between q = " << prev.q << " and q = " << q_grid[k] << " after " << cfg.max_bisections
          << " step halvings";
      curve.failure = msg.str();
      break;
    }
    curve.samples.push_back(to_sample(q_grid[k], *next));
    curve.last_good_q = q_grid[k];
  }
  fill_interior_runs(curve);
  return curve;
}

double rescaled_gap(const EigenPair& ep, double t_star, double q, const Field& u) {
  const double scale = std::pow(ep.lambda1, 1.0 / (1.0 - q));
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double profile = t_star * ep.phi1[i];
    num = std::max(num, std::abs(scale * u[i] - profile));
    den = std::max(den, std::abs(profile));
  }
  return num / den;
}

std::string classify_regime(const std::vector<double>& q, const std::vector<double>& sup_norm,
                            const std::vector<double>& g, const RegimeThresholds& th) {
  std::vector<std::size_t> tail;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] >= th.tail_start) tail.push_back(i);
  if (tail.size() < 2) return "undetermined";
  const double ratio = sup_norm[tail.back()] / sup_norm[tail.front()];
  if (ratio <= 1.0 / th.growth) return "vanishes";
  if (ratio >= th.growth) return "blows-up";
  bool decreasing = true;
  for (std::size_t k = 1; k < tail.size(); ++k) decreasing = decreasing && g[tail[k]] < g[tail[k - 1]];
  if (decreasing && g[tail.back()] <= th.gap) return "converges-to-t*phi1";
  return "undetermined";
}

Q1Limit asymptotic_q1(const Weight& w, const SolutionCurve& curve, const RegimeThresholds& th) {
  Q1Limit out;
  for (const CurveSample& s : curve.samples)
    if (s.q >= th.tail_start) {
      out.q.push_back(s.q);
      out.sup_norm.push_back(s.sup_norm);
    }
  if (out.q.empty()) {
    std::ostringstream msg;
    msg << "asymptotic_q1: no samples at q >= " << th.tail_start;
    throw Error(ErrorCode::missing_tail_samples, msg.str());
  }
  const EigenPair ep = principal_eigenpair(w);
  out.lambda1 = ep.lambda1;
  out.t_star = t_star(w, ep);
  out.profile_sup = out.t_star * ep.phi1.sup_norm();
  for (const CurveSample& s : curve.samples)
    if (s.q >= th.tail_start) out.g.push_back(rescaled_gap(ep, out.t_star, s.q, s.u));
  out.regime = classify_regime(out.q, out.sup_norm, out.g, th);
  return out;
}

Q0Limit asymptotic_q0(const Weight& w, const SolutionCurve& curve, double q_max, double tol) {
  Q0Limit out;
  out.reference = solve_linear(*w.grid(), w.samples());
  for (std::size_t i = 0; i < out.reference.size(); ++i)
    if (!(out.reference[i] > 0.0))
      throw Error(ErrorCode::precondition_failed, "asymptotic_q0: S(a) is not positive at every node");
  for (const CurveSample& s : curve.samples) {
    if (s.q > q_max || s.q < 0.0) continue;
    out.q.push_back(s.q);
    out.gap.push_back(sup_distance(s.u, out.reference));
    if (s.q == 0.0) {
      out.bracket_ok.push_back(true);
      out.bracket_margin.push_back(0.0);
      continue;
    }
    const double beta = 1.0 / (1.0 - s.q);
    const double k = supersolution_constant(w, s.q);
    const Field splus = solve_linear(*w.grid(), w.positive_part());
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.u.size(); ++i) {
      const double sub = std::pow((1.0 - s.q) * out.reference[i], beta);
      margin = std::min({margin, s.u[i] - sub, k * splus[i] - s.u[i]});
    }
    out.bracket_margin.push_back(margin);
    out.bracket_ok.push_back(margin >= -tol);
  }
  return out;
}

SolutionCurve singular_continue(const Weight& w, const std::vector<double>& gamma_grid, const ContinuationConfig& cfg,
                                const SingularOptions& opt) {
  if (gamma_grid.empty() || gamma_grid.front() != 0.0)
    throw Error(ErrorCode::invalid_argument, "singular_continue: gamma grid must start at 0");
  for (std::size_t k = 1; k < gamma_grid.size(); ++k)
    if (!(gamma_grid[k] > gamma_grid[k - 1]))
      throw Error(ErrorCode::invalid_argument, "singular_continue: gamma grid must be strictly increasing");
  const SolutionOperatorResult so = solution_operator(w);
  if (!so.in_positive_cone_interior)
    throw Error(ErrorCode::precondition_failed,
                "singular_continue: S(a) is not in the interior of the positive cone; S(a) > 0 is necessary");
  const Grid& g = *w.grid();
  const double rho0 = opt.decay_rho0_fraction * (g.upper() - g.lower());
  const DecayCheck decay = check_decay(w, opt.decay_alpha, rho0);
  if (!decay.satisfied)
    throw Error(ErrorCode::precondition_failed, "singular_continue: boundary decay diagnostic failed");

  SolutionCurve curve;
  CurveSample s0;
  s0.q = 0.0;
  s0.u = so.value;
  s0.residual = relative_residual(w, 0.0, so.value);
  s0.classification = classify_positivity(g, so.value, cfg.solve.classify).kind;
  s0.sup_norm = so.value.sup_norm();
  curve.samples.push_back(s0);
  curve.last_good_q = 0.0;
  for (std::size_t k = 1; k < gamma_grid.size(); ++k) {
    const CurveSample& prev = curve.samples.back();
    auto next = advance(w, prev.q, prev.u, -gamma_grid[k], cfg, false, true);
    if (!next) {
      curve.truncated = true;
      std::ostringstream msg;
      msg << "singular branch stopped before gamma = " << gamma_grid[k] << " (last gamma " << -prev.q << ")";
      curve.failure = msg.str();
      break;
    }
    curve.samples.push_back(to_sample(-gamma_grid[k], *next));
    curve.last_good_q = -gamma_grid[k];
  }
  fill_interior_runs(curve);
  return curve;
}

}  // namespace sublin
