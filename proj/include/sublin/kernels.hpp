#pragma once

// Nodewise kernels behind the grid, solver and energy code. Each kernel has a
// serial reference in kernels::serial and an OpenMP version in
// kernels::parallel; the library calls the parallel ones, tests and the
// benchmark compare the two.
//
// Reductions in the parallel namespace sum fixed-size blocks and then add the
// block partials in order, so results do not depend on the thread count.

#include <cstddef>
#include <span>

namespace sublin::kernels {

/// Problems below this size run the parallel kernels on one thread.
inline constexpr std::size_t kParallelThreshold = 8192;
/// Block length for deterministic reductions.
inline constexpr std::size_t kReductionBlock = 1024;

/// Nodewise power with the sublinear conventions: 0^q = 0 for q > 0,
/// u^0 = 1, negative exponents need u > 0 (not checked here).
double safe_pow(double u, double q) noexcept;

namespace serial {

void tridiag_apply(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> x, std::span<double> y);

/// out = A u - a * u^q
void semilinear_residual(std::span<const double> lower, std::span<const double> diag,
                         std::span<const double> upper, std::span<const double> a,
                         std::span<const double> u, double q, std::span<double> out);

/// out = a * u^q
void weighted_power(std::span<const double> a, std::span<const double> u, double q,
                    std::span<double> out);

double dot(std::span<const double> w, std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);

}  // namespace serial

namespace parallel {

void tridiag_apply(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> x, std::span<double> y);

void semilinear_residual(std::span<const double> lower, std::span<const double> diag,
                         std::span<const double> upper, std::span<const double> a,
                         std::span<const double> u, double q, std::span<double> out);

void weighted_power(std::span<const double> a, std::span<const double> u, double q,
                    std::span<double> out);

double dot(std::span<const double> w, std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);

}  // namespace parallel

}  // namespace sublin::kernels
