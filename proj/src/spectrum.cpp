#include "sublin/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sublin/error.hpp"
#include "sublin/kernels.hpp"

namespace sublin {

namespace {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};

/// [lo, hi] with no pencil eigenvalue in (0, lo] and at least one in (0, hi].
Bracket bracket_first_positive(const Tridiagonal& a, std::span<const double> d, int budget) {
  Bracket b;
  double sigma = 1.0;
  auto count = [&](double s) {
    ++b.steps;
    return negative_pivot_count(a, d, s);
  };
  if (count(sigma) == 0) {
    while (count(2.0 * sigma) == 0) {
      sigma *= 2.0;
      if (sigma > 1e300 || b.steps > budget)
        throw Error(ErrorCode::no_positive_eigenvalue,
                    "principal_eigenpair: no positive eigenvalue below 1e300 (a+ too small on the subdomain)");
    }
    b.lo = sigma;
    b.hi = 2.0 * sigma;
  } else {
    while (count(0.5 * sigma) > 0) {
      sigma *= 0.5;
      if (sigma < 1e-300 || b.steps > budget)
        throw Error(ErrorCode::no_positive_eigenvalue, "principal_eigenpair: eigenvalue bracket collapsed to 0");
    }
    b.lo = 0.5 * sigma;
    b.hi = sigma;
  }
  while (b.hi - b.lo > 4e-16 * b.hi) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid <= b.lo || mid >= b.hi) break;
    if (count(mid) == 0)
      b.lo = mid;
    else
      b.hi = mid;
    if (b.steps > budget) throw Error(ErrorCode::no_positive_eigenvalue, "principal_eigenpair: bisection budget exhausted");
  }
  return b;
}

double weighted_sum(std::span<const double> m, std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += m[i] * x[i] * y[i];
  return s;
}

}  // namespace

EigenPair principal_eigenpair(const Weight& w, std::optional<Component> sub_opt) {
  const Grid& g = *w.grid();
  const Component sub = sub_opt.value_or(Component{0, g.size()});
  if (sub.begin >= sub.end || sub.end > g.size())
    throw Error(ErrorCode::invalid_argument, "principal_eigenpair: empty or out-of-range subdomain");
  const std::size_t m = sub.size();
  const Tridiagonal a = g.laplacian().block(sub.begin, sub.end);
  const std::span<const double> d = w.values().subspan(sub.begin, m);
  if (std::none_of(d.begin(), d.end(), [](double v) { return v > 0.0; }))
    throw Error(ErrorCode::no_positive_eigenvalue, "principal_eigenpair: a+ vanishes on the subdomain");

  const int budget = static_cast<int>(10 * std::max<std::size_t>(m, 100));
  const Bracket br = bracket_first_positive(a, d, budget);

  // Shift just below λ₁: the inverse iteration contracts by
  // (λ₁ − σ)/(λ₂ − σ), so a couple of sweeps are enough.
  const double sigma = br.lo - 1e-10 * br.hi;
  std::vector<double> shift(m);
  for (std::size_t i = 0; i < m; ++i) shift[i] = -sigma * d[i];
  const Tridiagonal shifted = a.shifted(shift);

  std::vector<double> x(m, 1.0), rhs(m);
  int iterations = br.steps;
  for (int it = 0; it < 50; ++it, ++iterations) {
    for (std::size_t i = 0; i < m; ++i) rhs[i] = d[i] * x[i];
    std::vector<double> y = solve_pivoted(shifted, rhs);
    const double scale = kernels::serial::max_abs(y);
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw Error(ErrorCode::no_positive_eigenvalue, "principal_eigenpair: inverse iteration broke down");
    // Sign of the max-magnitude entry.
    const auto imax = std::max_element(y.begin(), y.end(), [](double p, double q) { return std::abs(p) < std::abs(q); });
    const double s = (*imax > 0.0 ? 1.0 : -1.0) / scale;
    double change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      y[i] *= s;
      change = std::max(change, std::abs(y[i] - x[i]));
    }
    x = std::move(y);
    if (change <= 1e-14) break;
  }

  // Rayleigh quotient in the symmetrized inner product.
  const std::vector<double> sym = symmetrizer(a);
  const std::vector<double> ax = a.apply(x);
  std::vector<double> dx(m);
  for (std::size_t i = 0; i < m; ++i) dx[i] = d[i] * x[i];
  const double den = weighted_sum(sym, x, dx);
  if (!(den > 0.0))
    throw Error(ErrorCode::no_positive_eigenvalue, "principal_eigenpair: eigenvector has ∫aφ² <= 0");
  const double lambda = weighted_sum(sym, x, ax) / den;

  for (std::size_t i = 0; i < m; ++i) {
    if (!(x[i] > 0.0)) {
      std::ostringstream msg;
      msg << "principal_eigenpair: eigenvector not positive at node " << sub.begin + i;
      throw Error(ErrorCode::no_positive_eigenvalue, msg.str());
    }
  }

  const auto gw = g.weights().subspan(sub.begin, m);
  const double norm = std::sqrt(weighted_sum(gw, x, x));
  EigenPair ep;
  ep.lambda1 = lambda;
  ep.subdomain = sub;
  ep.iterations = iterations;
  ep.phi1 = Field(w.grid());
  for (std::size_t i = 0; i < m; ++i) ep.phi1[sub.begin + i] = x[i] / norm;

  double rmax = 0.0, smax = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    rmax = std::max(rmax, std::abs(ax[i] - lambda * dx[i]));
    smax = std::max(smax, std::abs(lambda * dx[i]));
  }
  ep.residual = rmax / smax;
  return ep;
}

namespace {

struct Moments {
  double t = 0.0;  ///< ∫aφ²
  double l = 0.0;  ///< ∫aφ² log φ
};

Moments moments(const Weight& w, const EigenPair& ep) {
  const Grid& g = *w.grid();
  require_on_grid(g, ep.phi1, "t_star");
  Moments mo;
  for (std::size_t i = ep.subdomain.begin; i < ep.subdomain.end; ++i) {
    const double p = ep.phi1[i];
    const double ap2 = g.weights()[i] * w.values()[i] * p * p;
    mo.t += ap2;
    if (p > 0.0) mo.l += ap2 * std::log(p);
  }
  return mo;
}

}  // namespace

double transversality(const Weight& w, const EigenPair& ep) { return moments(w, ep).t; }

double t_star(const Weight& w, const EigenPair& ep) {
  const Moments mo = moments(w, ep);
  if (!(mo.t > 0.0)) {
    std::ostringstream msg;
    msg << "t_star: transversality integral ∫aφ₁² = " << mo.t << " is not positive";
    throw Error(ErrorCode::transversality_failure, msg.str());
  }
  return std::exp(-mo.l / mo.t);
}

double t_star(const Weight& w) { return t_star(w, principal_eigenpair(w)); }

double phi_q_slice(const Weight& w, const EigenPair& ep, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::invalid_argument, "phi_q_slice: need t > 0");
  const Moments mo = moments(w, ep);
  return t * (std::log(t) * mo.t + mo.l);
}

}  // namespace sublin
