#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "sublin/tridiag.hpp"

namespace sublin {

enum class GridKind { interval, radial };

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// Finite-difference discretization of an interval (x0, x1) or of the radial
/// ball of radius R in R^N. Only interior nodes are stored; the Dirichlet
/// boundary value 0 is implicit.
///
/// Interval: h = (x1 - x0)/(n + 1), x_i = x0 + (i + 1) h.
/// Radial:   h = R/(n + 1/2), r_i = (i + 1/2) h, so the boundary r = R sits one
///           spacing past the last node and a ghost node at -h/2 mirrors the
///           first one (u'(0) = 0).
class Grid {
 public:
  static GridPtr interval(double x0, double x1, std::size_t n_interior);
  static GridPtr radial(double radius, int dim, std::size_t n_interior);

  GridKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double h() const noexcept { return h_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  int dim() const noexcept { return dim_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double node(std::size_t i) const { return nodes_[i]; }

  /// Quadrature weights (see integrate()).
  std::span<const double> weights() const noexcept { return weights_; }

  /// Matrix of the discrete -Δ with the Dirichlet closure folded in.
  const Tridiagonal& laplacian() const noexcept { return laplacian_; }

  /// Stiffness matrix K of the discrete Dirichlet energy: ∫|∇u|² ≈ uᵀ K u.
  const Tridiagonal& stiffness() const noexcept { return stiffness_; }

  /// Distance of node i to ∂Ω (radial: R - r_i).
  double boundary_distance(std::size_t i) const;

  double domain_measure() const;

  /// Number of boundary points (2 for an interval, 1 for the sphere r = R).
  std::size_t boundary_count() const noexcept { return kind_ == GridKind::interval ? 2 : 1; }

  /// Same domain with about half the spacing (interval: exactly h/2).
  GridPtr refined() const;

  bool same_layout(const Grid& other) const noexcept;

 private:
  Grid() = default;
  void build_operators();

  GridKind kind_ = GridKind::interval;
  double lower_ = 0.0;
  double upper_ = 1.0;
  int dim_ = 1;
  double h_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  Tridiagonal laplacian_;
  Tridiagonal stiffness_;
};

/// A discrete function on a Grid with implicit zero boundary values.
struct Field {
  GridPtr grid;
  std::vector<double> values;

  Field() = default;
  explicit Field(GridPtr g);
  Field(GridPtr g, std::vector<double> v);

  static Field from_function(GridPtr g, const std::function<double(double)>& f);

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }

  double sup_norm() const;
  double min() const;
  double max() const;
};

/// Throws ErrorCode::grid_mismatch unless f lives on g.
void require_on_grid(const Grid& g, const Field& f, const char* where);

double sup_distance(const Field& a, const Field& b);

/// Discrete −Δu with zero Dirichlet extension.
Field laplacian_apply(const Grid& g, const Field& u);

/// Solves −Δu = f by tridiagonal elimination.
Field solve_linear(const Grid& g, const Field& f);

/// ∫_Ω u. Interval: trapezoid with the zero endpoints, the two boundary half
/// cells attributed to the outermost nodes so constants integrate exactly.
/// Radial: cell-centered shells with exact shell measure ω_{N-1}∫r^{N-1}dr.
double integrate(const Grid& g, const Field& u);

/// Outward normal derivative at each boundary point by a one-sided
/// second-order difference: {left, right} for intervals, {r = R} for radial.
std::vector<double> boundary_flux(const Grid& g, const Field& u);

/// Discrete Dirichlet energy ∫|∇u|² (forward differences, zero extension).
double dirichlet_integral(const Grid& g, const Field& u);

/// Surface area of the unit sphere S^{N-1} (2 for N = 1).
double unit_sphere_area(int dim);

}  // namespace sublin
