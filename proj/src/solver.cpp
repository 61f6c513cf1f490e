#include "sublin/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sublin/error.hpp"
#include "sublin/kernels.hpp"
#include "sublin/spectrum.hpp"

namespace sublin {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::trivial_solution: return "trivial-solution";
    case SolveStatus::max_iterations: return "max-iterations";
    case SolveStatus::line_search_failed: return "line-search-failed";
  }
  return "unknown";
}

namespace {

/// A node that a step would push below zero keeps this fraction of its value
/// instead; nodes already at zero stay there.
constexpr double kClipFraction = 1e-2;
/// Line-search trials with a sup norm below this fraction of the current one
/// are rejected.
constexpr double kCollapseFactor = 0.1;

bool integer_exponent(double q) { return q == std::floor(q); }

void check_admissible(double q, const Field& u, const char* where) {
  if (q < 0.0) {
    for (std::size_t i = 0; i < u.size(); ++i)
      if (!(u[i] > 0.0)) {
        std::ostringstream msg;
        msg << where << ": singular exponent q = " << q << " needs u > 0, got u = " << u[i] << " at node " << i;
        throw Error(ErrorCode::invalid_argument, msg.str());
      }
  } else if (!integer_exponent(q)) {
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] < 0.0) {
        std::ostringstream msg;
        msg << where << ": negative value " << u[i] << " at node " << i << " with non-integer q = " << q;
        throw Error(ErrorCode::invalid_argument, msg.str());
      }
  }
}

struct Eval {
  std::vector<double> f;   // A u − a u^q
  double rel = 0.0;
  double merit = 0.0;      // ½‖F‖²
};

Eval evaluate(const Weight& w, double q, std::span<const double> u) {
  const Tridiagonal& a = w.grid()->laplacian();
  const std::size_t n = u.size();
  Eval e;
  e.f.resize(n);
  std::vector<double> au(n), rhs(n);
  kernels::parallel::tridiag_apply(a.lower, a.diag, a.upper, u, au);
  kernels::parallel::weighted_power(w.values(), u, q, rhs);
  for (std::size_t i = 0; i < n; ++i) e.f[i] = au[i] - rhs[i];
  const double scale = std::max(kernels::parallel::max_abs(au), kernels::parallel::max_abs(rhs));
  const double fmax = kernels::parallel::max_abs(e.f);
  e.rel = scale > 0.0 ? fmax / scale : 0.0;
  e.merit = 0.5 * kernels::parallel::dot({}, e.f, e.f);
  return e;
}

Tridiagonal jacobian(const Weight& w, double q, std::span<const double> u, double eps_reg) {
  Tridiagonal j = w.grid()->laplacian();
  if (q == 0.0) return j;
  const double floor = eps_reg * kernels::serial::max_abs(u);
  const auto a = w.values();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double base = q > 0.0 ? std::max(u[i], floor) : u[i];
    if (base > 0.0) j.diag[i] -= q * a[i] * std::pow(base, q - 1.0);
  }
  return j;
}

/// u ← (A + M)⁻¹(a u^q + M u) with M = max(0, −q a) max(u, floor)^{q−1}.
std::vector<double> picard_step(const Weight& w, double q, std::span<const double> u, double eps_reg) {
  const std::size_t n = u.size();
  const auto a = w.values();
  const double floor = eps_reg * kernels::serial::max_abs(u);
  std::vector<double> shift(n, 0.0), rhs(n);
  kernels::parallel::weighted_power(a, u, q, rhs);
  for (std::size_t i = 0; i < n; ++i) {
    if (-q * a[i] > 0.0) {
      const double base = q > 0.0 ? std::max(u[i], floor) : u[i];
      shift[i] = -q * a[i] * std::pow(base, q - 1.0);
    }
    rhs[i] += shift[i] * u[i];
  }
  std::vector<double> next = solve_thomas(w.grid()->laplacian().shifted(shift), rhs);
  if (q > 0.0)
    for (double& v : next) v = std::max(v, 0.0);
  return next;
}

void finish(const Weight& w, double q, SolveReport& rep, const SolveConfig& cfg) {
  rep.classification = classify_positivity(*w.grid(), rep.solution, cfg.classify);
  if (rep.converged() && cfg.check_bounds && q > 0.0 && q < 1.0)
    rep.bounds = check_bounds(w, q, rep.solution, rep.classification);
}

}  // namespace

Field residual(const Weight& w, double q, const Field& u) {
  require_on_grid(*w.grid(), u, "residual");
  check_admissible(q, u, "residual");
  return Field(w.grid(), evaluate(w, q, u.values).f);
}

double relative_residual(const Weight& w, double q, const Field& u) {
  require_on_grid(*w.grid(), u, "relative_residual");
  check_admissible(q, u, "relative_residual");
  return evaluate(w, q, u.values).rel;
}

SolveReport newton_solve(const Weight& w, double q, const Field& init, const SolveConfig& cfg) {
  require_on_grid(*w.grid(), init, "newton_solve");
  const std::size_t n = init.size();
  SolveReport rep;
  rep.solution = init;
  auto& u = rep.solution.values;
  if (q > 0.0)
    for (double& v : u) v = std::max(v, 0.0);
  check_admissible(q, rep.solution, "newton_solve");
  const double init_scale = kernels::serial::max_abs(u);
  if (!(init_scale > 0.0)) {
    rep.status = SolveStatus::trivial_solution;
    finish(w, q, rep, cfg);
    return rep;
  }

  Eval cur = evaluate(w, q, u);
  std::vector<double> trial(n), neg(n);
  for (rep.iterations = 0;; ++rep.iterations) {
    rep.residual = cur.rel;
    if (cur.rel <= cfg.tol_residual) {
      rep.status = SolveStatus::converged;
      break;
    }
    if (rep.iterations >= cfg.max_iter) {
      rep.status = SolveStatus::max_iterations;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) neg[i] = -cur.f[i];
    std::vector<double> step;
    try {
      step = solve_pivoted(jacobian(w, q, u, cfg.eps_reg), neg);
    } catch (const Error&) {
      rep.status = SolveStatus::line_search_failed;
      break;
    }

    double t = 1.0;
    if (q < 0.0) {
      // Fraction to the boundary of the open cone u > 0.
      for (std::size_t i = 0; i < n; ++i)
        if (step[i] < 0.0) t = std::min(t, 0.99 * u[i] / -step[i]);
    }
    bool accepted = false;
    Eval next;
    while (t >= cfg.min_step) {
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = u[i] + t * step[i];
        if (q > 0.0 && trial[i] < 0.0) trial[i] = kClipFraction * u[i];
      }
      next = evaluate(w, q, trial);
      // The merit also decreases toward the trivial root; a step that shrinks
      // the iterate wholesale is left to the fallback below.
      const bool collapse = kernels::serial::max_abs(trial) < kCollapseFactor * kernels::serial::max_abs(u);
      if (!collapse && std::isfinite(next.merit) && next.merit <= (1.0 - 2.0 * cfg.armijo * t) * cur.merit) {
        accepted = true;
        break;
      }
      t *= cfg.backtrack;
    }
    if (!accepted) {
      // Near-singular Jacobians (typical below the solution, where a u^q is
      // steep) give useless directions; take one monotone-iteration step.
      trial = picard_step(w, q, u, std::max(cfg.eps_reg, 1e-12));
      next = evaluate(w, q, trial);
      if (!std::isfinite(next.merit)) {
        rep.status = SolveStatus::line_search_failed;
        break;
      }
    }
    u.swap(trial);
    cur = std::move(next);
    if (kernels::serial::max_abs(u) <= 1e-12 * init_scale) {
      rep.residual = cur.rel;
      rep.status = SolveStatus::trivial_solution;
      ++rep.iterations;
      break;
    }
  }
  finish(w, q, rep, cfg);
  return rep;
}

SolveReport monotone_iterate(const Weight& w, double q, const Field& sub, const Field& super,
                             const SolveConfig& cfg) {
  const Grid& g = *w.grid();
  require_on_grid(g, sub, "monotone_iterate");
  require_on_grid(g, super, "monotone_iterate");
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::invalid_argument, "monotone_iterate: need 0 < q < 1");
  const std::size_t n = sub.size();
  const double scale = std::max(super.sup_norm(), std::numeric_limits<double>::min());
  const double tol = 1e-8 * scale;
  for (std::size_t i = 0; i < n; ++i) {
    if (sub[i] < 0.0 || sub[i] > super[i] + tol) {
      std::ostringstream msg;
      msg << "monotone_iterate: need 0 <= sub <= super, violated at node " << i << " (sub " << sub[i] << ", super "
          << super[i] << ")";
      throw Error(ErrorCode::ordering_violated, msg.str());
    }
  }

  const auto a = w.values();
  const double floor = std::max(cfg.eps_reg, 1e-12) * scale;
  std::vector<double> shift(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] < 0.0) shift[i] = q * -a[i] * std::pow(std::max(sub[i], floor), q - 1.0);

  SolveReport rep;
  std::vector<double> u = sub.values, rhs(n), pw(n);
  bool retried = false;
  Tridiagonal b = g.laplacian().shifted(shift);
  const int budget = 20 * cfg.max_iter;
  int it = 0;
  for (; it < budget; ++it) {
    kernels::parallel::weighted_power(a, u, q, pw);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = pw[i] + shift[i] * u[i];
    std::vector<double> next = solve_thomas(b, rhs);
    double drop = 0.0, over = 0.0, change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      drop = std::max(drop, u[i] - next[i]);
      over = std::max(over, next[i] - super[i]);
      change = std::max(change, std::abs(next[i] - u[i]));
    }
    if (drop > tol) {
      if (retried) {
        std::ostringstream msg;
        msg << "monotone_iterate: iterate decreased by " << drop << " at step " << it << " even with the 10x shift";
        throw Error(ErrorCode::non_monotone, msg.str());
      }
      retried = true;
      for (double& s : shift) s *= 10.0;
      b = g.laplacian().shifted(shift);
      --it;
      continue;
    }
    if (over > tol) {
      std::ostringstream msg;
      msg << "monotone_iterate: iterate exceeds the supersolution by " << over << " at step " << it;
      throw Error(ErrorCode::ordering_violated, msg.str());
    }
    for (std::size_t i = 0; i < n; ++i) u[i] = std::max(next[i], u[i]);
    if (change <= 1e-9 * std::max(kernels::serial::max_abs(u), std::numeric_limits<double>::min())) {
      ++it;
      break;
    }
  }

  Field start(w.grid(), u);
  if (relative_residual(w, q, start) <= cfg.tol_residual) {
    rep.solution = std::move(start);
    rep.status = SolveStatus::converged;
    rep.iterations = it;
    rep.residual = relative_residual(w, q, rep.solution);
    finish(w, q, rep, cfg);
    return rep;
  }
  rep = newton_solve(w, q, start, cfg);
  rep.iterations += it;
  return rep;
}

Field make_subsolution(const Weight& w, double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::invalid_argument, "make_subsolution: need 0 < q < 1");
  const Grid& g = *w.grid();
  const Field s = solve_linear(g, w.samples());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!(s[i] > 0.0)) {
      std::ostringstream msg;
      msg << "make_subsolution: S(a) = " << s[i] << " <= 0 at x = " << g.node(i);
      throw Error(ErrorCode::no_global_subsolution, msg.str());
    }
  const double beta = 1.0 / (1.0 - q);
  Field psi(w.grid());
  for (std::size_t i = 0; i < s.size(); ++i) psi[i] = std::pow((1.0 - q) * s[i], beta);

  const Eval e = evaluate(w, q, psi.values);
  std::vector<double> rhs(s.size());
  kernels::serial::weighted_power(w.values(), psi.values, q, rhs);
  const double slack = 10.0 * g.h() * g.h() * kernels::serial::max_abs(rhs) + 1e-12 * kernels::serial::max_abs(rhs);
  const double defect = *std::max_element(e.f.begin(), e.f.end());
  if (defect > slack) {
    std::ostringstream msg;
    msg << "make_subsolution: subsolution defect " << defect << " exceeds the slack " << slack;
    throw Error(ErrorCode::precondition_failed, msg.str());
  }
  return psi;
}

Field component_subsolution(const Weight& w, double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::invalid_argument, "component_subsolution: need 0 < q < 1");
  Field psi(w.grid());
  for (const Component& c : w.components()) {
    const EigenPair ep = principal_eigenpair(w, c);
    double pmax = 0.0;
    for (std::size_t i = c.begin; i < c.end; ++i) pmax = std::max(pmax, ep.phi1[i]);
    const double amp = std::pow(ep.lambda1, -1.0 / (1.0 - q)) / pmax;
    for (std::size_t i = c.begin; i < c.end; ++i) psi[i] = std::max(psi[i], amp * ep.phi1[i]);
  }
  return psi;
}

double supersolution_constant(const Weight& w, double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::invalid_argument, "supersolution_constant: need 0 < q < 1");
  const double s = solve_linear(*w.grid(), w.positive_part()).sup_norm();
  return std::max(std::pow(s, q / (1.0 - q)), std::pow(s, 1.0 / (1.0 - q))) * (1.0 + 1e-6);
}

Field make_supersolution(const Weight& w, double q) {
  Field s = solve_linear(*w.grid(), w.positive_part());
  const double k = supersolution_constant(w, q);
  for (double& v : s.values) v *= k;
  return s;
}

double apriori_upper(const Weight& w, double q0) {
  if (!(q0 > 0.0 && q0 < 1.0)) throw Error(ErrorCode::invalid_argument, "apriori_upper: need 0 < q0 < 1");
  const Grid& g = *w.grid();
  const std::vector<double> kinv = inverse_diagonal_spd(g.stiffness());
  const double c_inf = *std::max_element(kinv.begin(), kinv.end());
  const double l1 = integrate(g, w.positive_part());
  const double base = std::max(1.0, std::max(1.0, c_inf) * l1);
  return std::pow(base, 1.0 / (1.0 - q0));
}

BoundsCheck check_bounds(const Weight& w, double q, const Field& u, const Classification& c) {
  BoundsCheck b;
  const Grid& g = *w.grid();
  b.upper_checked = true;
  b.h1_norm = std::sqrt(std::max(0.0, dirichlet_integral(g, u)));
  b.upper_ceiling = apriori_upper(w, q);
  b.upper_ok = b.h1_norm <= b.upper_ceiling * (1.0 + 1e-6);
  if (is_positive(c.kind)) {
    b.lower_checked = true;
    b.lower_margin = std::numeric_limits<double>::infinity();
    const Field psi = component_subsolution(w, q);
    for (const Component& comp : w.components())
      for (std::size_t i = comp.begin; i < comp.end; ++i) b.lower_margin = std::min(b.lower_margin, u[i] - psi[i]);
    b.lower_ok = b.lower_margin >= -1e-8 * std::max(1.0, u.sup_norm());
  }
  return b;
}

}  // namespace sublin
