#include "sublin/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sublin/error.hpp"
#include "sublin/kernels.hpp"

namespace sublin {

GridPtr Grid::interval(double x0, double x1, std::size_t n_interior) {
  if (!(x1 > x0) || !std::isfinite(x0) || !std::isfinite(x1))
    throw Error(ErrorCode::invalid_argument, "Grid::interval: need finite x0 < x1");
  if (n_interior < 3) throw Error(ErrorCode::invalid_argument, "Grid::interval: need n_interior >= 3");
  auto g = std::shared_ptr<Grid>(new Grid());
  g->kind_ = GridKind::interval;
  g->lower_ = x0;
  g->upper_ = x1;
  g->dim_ = 1;
  g->h_ = (x1 - x0) / static_cast<double>(n_interior + 1);
  g->nodes_.resize(n_interior);
  // Fill from both ends so symmetric intervals get exactly mirrored nodes.
  for (std::size_t i = 0; i < n_interior; ++i) {
    const std::size_t left = i + 1, right = n_interior - i;
    if (left == right)
      g->nodes_[i] = 0.5 * (x0 + x1);
    else if (left < right)
      g->nodes_[i] = x0 + static_cast<double>(left) * g->h_;
    else
      g->nodes_[i] = x1 - static_cast<double>(right) * g->h_;
  }
  g->build_operators();
  return g;
}

GridPtr Grid::radial(double radius, int dim, std::size_t n_interior) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorCode::invalid_argument, "Grid::radial: need finite R > 0");
  // For N > 3 the centered first-derivative term makes the first rows lose the
  // M-matrix sign pattern at r ~ h, and with it the discrete maximum principle.
  if (dim < 1 || dim > 3) throw Error(ErrorCode::invalid_argument, "Grid::radial: dimN must be 1, 2 or 3");
  if (n_interior < 3) throw Error(ErrorCode::invalid_argument, "Grid::radial: need n_interior >= 3");
  auto g = std::shared_ptr<Grid>(new Grid());
  g->kind_ = GridKind::radial;
  g->lower_ = 0.0;
  g->upper_ = radius;
  g->dim_ = dim;
  g->h_ = radius / (static_cast<double>(n_interior) + 0.5);
  g->nodes_.resize(n_interior);
  for (std::size_t i = 0; i < n_interior; ++i) g->nodes_[i] = (static_cast<double>(i) + 0.5) * g->h_;
  g->build_operators();
  return g;
}

double unit_sphere_area(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
    default: {
      const double n = dim;
      return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
    }
  }
}

void Grid::build_operators() {
  const std::size_t n = nodes_.size();
  const double h = h_;
  const double h2 = h * h;
  laplacian_ = Tridiagonal(n);
  stiffness_ = Tridiagonal(n);
  weights_.assign(n, h);

  if (kind_ == GridKind::interval) {
    for (std::size_t i = 0; i < n; ++i) {
      laplacian_.diag[i] = 2.0 / h2;
      if (i > 0) laplacian_.lower[i] = -1.0 / h2;
      if (i + 1 < n) laplacian_.upper[i] = -1.0 / h2;
      stiffness_.diag[i] = 2.0 / h;
      if (i > 0) stiffness_.lower[i] = -1.0 / h;
      if (i + 1 < n) stiffness_.upper[i] = -1.0 / h;
    }
    weights_.front() += 0.5 * h;
    weights_.back() += 0.5 * h;
    return;
  }

  const double nm1 = static_cast<double>(dim_ - 1);
  const double omega = unit_sphere_area(dim_);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = nodes_[i];
    const double drift = nm1 * h / (2.0 * r);
    if (i == 0) {
      // Ghost u_{-1} = u_0 folds the lower coefficient into the diagonal.
      laplacian_.diag[0] = (2.0 - (1.0 - drift)) / h2;
    } else {
      laplacian_.diag[i] = 2.0 / h2;
      laplacian_.lower[i] = -(1.0 - drift) / h2;
    }
    if (i + 1 < n) laplacian_.upper[i] = -(1.0 + drift) / h2;
  }
  // Edge coefficient between node i and i+1 sits at r = (i+1) h; the last
  // node connects to the boundary through r = n h.
  auto edge = [&](std::size_t i) {
    return omega * std::pow(static_cast<double>(i + 1) * h, nm1) / h;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double right = edge(i);
    const double left = i > 0 ? edge(i - 1) : 0.0;
    stiffness_.diag[i] = left + right;
    if (i > 0) stiffness_.lower[i] = -left;
    if (i + 1 < n) stiffness_.upper[i] = -right;
  }
  const double dn = static_cast<double>(dim_);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = static_cast<double>(i) * h;
    const double b = i + 1 < n ? static_cast<double>(i + 1) * h : upper_;
    weights_[i] = omega / dn * (std::pow(b, dn) - std::pow(a, dn));
  }
}

double Grid::boundary_distance(std::size_t i) const {
  const double x = nodes_.at(i);
  if (kind_ == GridKind::radial) return upper_ - x;
  return std::min(x - lower_, upper_ - x);
}

double Grid::domain_measure() const {
  if (kind_ == GridKind::interval) return upper_ - lower_;
  return unit_sphere_area(dim_) / dim_ * std::pow(upper_, dim_);
}

GridPtr Grid::refined() const {
  if (kind_ == GridKind::interval) return interval(lower_, upper_, 2 * size() + 1);
  return radial(upper_, dim_, 2 * size());
}

bool Grid::same_layout(const Grid& other) const noexcept {
  return kind_ == other.kind_ && dim_ == other.dim_ && size() == other.size() &&
         lower_ == other.lower_ && upper_ == other.upper_;
}

Field::Field(GridPtr g) : grid(std::move(g)) { values.assign(grid->size(), 0.0); }

Field::Field(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid->size())
    throw Error(ErrorCode::grid_mismatch, "Field: value count " + std::to_string(values.size()) +
                                              " != n_interior " + std::to_string(grid->size()));
}

Field Field::from_function(GridPtr g, const std::function<double(double)>& f) {
  Field out(g);
  for (std::size_t i = 0; i < g->size(); ++i) out.values[i] = f(g->node(i));
  return out;
}

double Field::sup_norm() const { return kernels::parallel::max_abs(values); }
double Field::min() const { return *std::min_element(values.begin(), values.end()); }
double Field::max() const { return *std::max_element(values.begin(), values.end()); }

void require_on_grid(const Grid& g, const Field& f, const char* where) {
  if (!f.grid || (f.grid.get() != &g && !f.grid->same_layout(g)) || f.size() != g.size())
    throw Error(ErrorCode::grid_mismatch, std::string(where) + ": field does not live on this grid");
}

double sup_distance(const Field& a, const Field& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::grid_mismatch, "sup_distance: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Field laplacian_apply(const Grid& g, const Field& u) {
  require_on_grid(g, u, "laplacian_apply");
  Field out(u.grid);
  g.laplacian().apply(u.values, out.values);
  return out;
}

Field solve_linear(const Grid& g, const Field& f) {
  require_on_grid(g, f, "solve_linear");
  return Field(f.grid, solve_thomas(g.laplacian(), f.values));
}

double integrate(const Grid& g, const Field& u) {
  require_on_grid(g, u, "integrate");
  return kernels::parallel::dot(g.weights(), u.values, std::vector<double>(u.size(), 1.0));
}

std::vector<double> boundary_flux(const Grid& g, const Field& u) {
  require_on_grid(g, u, "boundary_flux");
  const std::size_t n = g.size();
  const double h = g.h();
  if (g.kind() == GridKind::interval) {
    const double left = -(4.0 * u[0] - u[1]) / (2.0 * h);
    const double right = (u[n - 2] - 4.0 * u[n - 1]) / (2.0 * h);
    return {left, right};
  }
  // The last node sits at R - h, as on an interval.
  return {(u[n - 2] - 4.0 * u[n - 1]) / (2.0 * h)};
}

double dirichlet_integral(const Grid& g, const Field& u) {
  require_on_grid(g, u, "dirichlet_integral");
  const std::size_t n = g.size();
  const Tridiagonal& k = g.stiffness();
  // Edge i joins node i to node i+1 (node n is the boundary value 0); its
  // coefficient is the negated off-diagonal, or for the last edge the part of
  // the diagonal not used by the left edge.
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double next = i + 1 < n ? u[i + 1] : 0.0;
    const double coeff = i + 1 < n ? -k.upper[i] : k.diag[i] + k.lower[i];
    const double d = next - u[i];
    sum += coeff * d * d;
  }
  if (g.kind() == GridKind::interval) sum += u[0] * u[0] / g.h();
  return sum;
}

}  // namespace sublin
