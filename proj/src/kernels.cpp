#include "sublin/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sublin::kernels {

double safe_pow(double u, double q) noexcept {
  if (q == 0.0) return 1.0;
  if (q > 0.0) return u > 0.0 ? std::pow(u, q) : 0.0;
  return std::pow(u, q);
}

namespace {

inline double stencil_row(std::span<const double> lower, std::span<const double> diag,
                          std::span<const double> upper, std::span<const double> x,
                          std::size_t i, std::size_t n) {
  double v = diag[i] * x[i];
  if (i > 0) v += lower[i] * x[i - 1];
  if (i + 1 < n) v += upper[i] * x[i + 1];
  return v;
}

inline double dot_term(std::span<const double> w, std::span<const double> x,
                       std::span<const double> y, std::size_t i) {
  return (w.empty() ? 1.0 : w[i]) * x[i] * y[i];
}

}  // namespace

namespace serial {

void tridiag_apply(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> x, std::span<double> y) {
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) y[i] = stencil_row(lower, diag, upper, x, i, n);
}

void semilinear_residual(std::span<const double> lower, std::span<const double> diag,
                         std::span<const double> upper, std::span<const double> a,
                         std::span<const double> u, double q, std::span<double> out) {
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i)
    out[i] = stencil_row(lower, diag, upper, u, i, n) - a[i] * safe_pow(u[i], q);
}

void weighted_power(std::span<const double> a, std::span<const double> u, double q,
                    std::span<double> out) {
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = a[i] * safe_pow(u[i], q);
}

double dot(std::span<const double> w, std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += dot_term(w, x, y, i);
  return s;
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace serial

namespace parallel {

void tridiag_apply(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> x, std::span<double> y) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(diag.size());
#pragma omp parallel for schedule(static) if (diag.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    y[i] = stencil_row(lower, diag, upper, x, static_cast<std::size_t>(i), diag.size());
}

void semilinear_residual(std::span<const double> lower, std::span<const double> diag,
                         std::span<const double> upper, std::span<const double> a,
                         std::span<const double> u, double q, std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(diag.size());
#pragma omp parallel for schedule(static) if (diag.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = stencil_row(lower, diag, upper, u, k, diag.size()) - a[k] * safe_pow(u[k], q);
  }
}

void weighted_power(std::span<const double> a, std::span<const double> u, double q,
                    std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static) if (u.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * safe_pow(u[i], q);
}

double dot(std::span<const double> w, std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += dot_term(w, x, y, i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

double max_abs(std::span<const double> x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) if (x.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

}  // namespace parallel

}  // namespace sublin::kernels
