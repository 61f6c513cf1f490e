#include "sublin/tridiag.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

#include "sublin/error.hpp"
#include "sublin/kernels.hpp"

namespace sublin {

void Tridiagonal::apply(std::span<const double> x, std::span<double> y) const {
  kernels::parallel::tridiag_apply(lower, diag, upper, x, y);
}

std::vector<double> Tridiagonal::apply(std::span<const double> x) const {
  std::vector<double> y(size());
  apply(x, y);
  return y;
}

Tridiagonal Tridiagonal::block(std::size_t lo, std::size_t hi) const {
  if (lo >= hi || hi > size())
    throw Error(ErrorCode::invalid_argument, "Tridiagonal::block: empty or out-of-range block");
  Tridiagonal b(hi - lo);
  for (std::size_t i = lo; i < hi; ++i) {
    b.diag[i - lo] = diag[i];
    b.lower[i - lo] = i > lo ? lower[i] : 0.0;
    b.upper[i - lo] = i + 1 < hi ? upper[i] : 0.0;
  }
  return b;
}

Tridiagonal Tridiagonal::shifted(std::span<const double> shift) const {
  Tridiagonal b = *this;
  for (std::size_t i = 0; i < size(); ++i) b.diag[i] += shift[i];
  return b;
}

std::vector<double> solve_thomas(const Tridiagonal& a, std::span<const double> rhs) {
  const std::size_t n = a.size();
  if (rhs.size() != n) throw Error(ErrorCode::grid_mismatch, "solve_thomas: size mismatch");
  std::vector<double> c(n), x(n);
  double pivot = a.diag[0];
  if (!(pivot > 0.0)) throw Error(ErrorCode::singular_system, "solve_thomas: non-positive pivot at row 0");
  c[0] = n > 1 ? a.upper[0] / pivot : 0.0;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = a.diag[i] - a.lower[i] * c[i - 1];
    if (!(pivot > 0.0))
      throw Error(ErrorCode::singular_system,
                  "solve_thomas: non-positive pivot at row " + std::to_string(i));
    c[i] = i + 1 < n ? a.upper[i] / pivot : 0.0;
    x[i] = (rhs[i] - a.lower[i] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

std::vector<double> solve_pivoted(const Tridiagonal& a, std::span<const double> rhs) {
  const std::size_t n = a.size();
  if (rhs.size() != n) throw Error(ErrorCode::grid_mismatch, "solve_pivoted: size mismatch");
  std::vector<double> x(rhs.begin(), rhs.end());
  if (n == 1) {
    if (a.diag[0] == 0.0) throw Error(ErrorCode::singular_system, "solve_pivoted: singular 1x1");
    x[0] /= a.diag[0];
    return x;
  }
  std::vector<double> dl(a.lower.begin() + 1, a.lower.end());
  std::vector<double> d = a.diag;
  std::vector<double> du(a.upper.begin(), a.upper.end() - 1);
  const lapack_int info = LAPACKE_dgtsv(LAPACK_COL_MAJOR, static_cast<lapack_int>(n), 1, dl.data(),
                                        d.data(), du.data(), x.data(), static_cast<lapack_int>(n));
  if (info != 0)
    throw Error(ErrorCode::singular_system, "solve_pivoted: dgtsv info=" + std::to_string(info));
  return x;
}

std::size_t negative_pivot_count(const Tridiagonal& a, std::span<const double> d, double sigma) {
  const std::size_t n = a.size();
  std::size_t count = 0;
  double pivot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double p = a.diag[i] - sigma * d[i];
    if (i > 0) p -= a.lower[i] * a.upper[i - 1] / pivot;
    // Exact zero pivots are nudged; the count is then that of a nearby shift.
    if (p == 0.0) p = -1e-300;
    if (p < 0.0) ++count;
    pivot = p;
  }
  return count;
}

std::vector<double> symmetrizer(const Tridiagonal& a) {
  const std::size_t n = a.size();
  std::vector<double> m(n, 1.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lo = a.lower[i + 1];
    const double up = a.upper[i];
    if (!(lo * up > 0.0))
      throw Error(ErrorCode::invalid_argument, "symmetrizer: off-diagonal product not positive");
    m[i + 1] = m[i] * up / lo;
  }
  return m;
}

std::vector<double> inverse_diagonal_spd(const Tridiagonal& a) {
  const std::size_t n = a.size();
  std::vector<double> fwd(n), bwd(n), out(n);
  fwd[0] = a.diag[0];
  for (std::size_t i = 1; i < n; ++i) fwd[i] = a.diag[i] - a.lower[i] * a.upper[i - 1] / fwd[i - 1];
  bwd[n - 1] = a.diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) bwd[i] = a.diag[i] - a.upper[i] * a.lower[i + 1] / bwd[i + 1];
  for (std::size_t i = 0; i < n; ++i) {
    const double denom = fwd[i] + bwd[i] - a.diag[i];
    if (!(denom > 0.0)) throw Error(ErrorCode::singular_system, "inverse_diagonal_spd: not SPD");
    out[i] = 1.0 / denom;
  }
  return out;
}

}  // namespace sublin
