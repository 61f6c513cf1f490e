#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sublin {

/// Tridiagonal matrix in three-band storage. Row i reads
/// lower[i]*x[i-1] + diag[i]*x[i] + upper[i]*x[i+1]; lower[0] and
/// upper[n-1] are ignored and kept at zero.
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  Tridiagonal() = default;
  explicit Tridiagonal(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

  std::size_t size() const noexcept { return diag.size(); }

  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

  /// Principal sub-block on rows/cols [lo, hi). Couplings to rows outside are
  /// dropped, which is a homogeneous Dirichlet condition at the cut.
  Tridiagonal block(std::size_t lo, std::size_t hi) const;

  /// this + diag(shift)
  Tridiagonal shifted(std::span<const double> shift) const;
};

/// Thomas elimination without pivoting. Throws ErrorCode::singular_system
/// when a pivot is not strictly positive; intended for M-matrices.
std::vector<double> solve_thomas(const Tridiagonal& a, std::span<const double> rhs);

/// Gaussian elimination with partial pivoting (LAPACK dgtsv). Used for
/// indefinite Newton Jacobians and shifted eigen solves.
std::vector<double> solve_pivoted(const Tridiagonal& a, std::span<const double> rhs);

/// Number of negative pivots in the LU factorization of A - sigma*diag(d).
/// For a tridiagonal A with positive off-diagonal products (symmetrizable)
/// and positive definite, this counts the eigenvalues of the pencil (A, diag d)
/// lying in (0, sigma) when sigma > 0.
std::size_t negative_pivot_count(const Tridiagonal& a, std::span<const double> d, double sigma);

/// Weights m with diag(m)*A symmetric (m[0] = 1). Requires
/// lower[i+1]*upper[i] > 0 for every i.
std::vector<double> symmetrizer(const Tridiagonal& a);

/// Diagonal of the inverse of a symmetric positive definite tridiagonal.
std::vector<double> inverse_diagonal_spd(const Tridiagonal& a);

}  // namespace sublin
