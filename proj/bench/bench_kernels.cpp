// Serial reference kernels against their OpenMP counterparts. Sizes straddle
// kParallelThreshold, below which the parallel kernels run on one thread.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "sublin/kernels.hpp"

namespace k = sublin::kernels;

namespace {

struct Data {
  std::vector<double> lower, diag, upper, a, u, out;

  explicit Data(std::size_t n) : lower(n - 1, -1.0), diag(n, 2.0), upper(n - 1, -1.0), a(n), u(n), out(n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = 2.0 * d(rng) - 0.5;
      u[i] = d(rng);
    }
  }
};

template <bool Parallel>
void residual(benchmark::State& state) {
  Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel)
      k::parallel::semilinear_residual(d.lower, d.diag, d.upper, d.a, d.u, 0.5, d.out);
    else
      k::serial::semilinear_residual(d.lower, d.diag, d.upper, d.a, d.u, 0.5, d.out);
    benchmark::DoNotOptimize(d.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void weighted_power(benchmark::State& state) {
  Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel)
      k::parallel::weighted_power(d.a, d.u, 1.0 / 3.0, d.out);
    else
      k::serial::weighted_power(d.a, d.u, 1.0 / 3.0, d.out);
    benchmark::DoNotOptimize(d.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void dot(benchmark::State& state) {
  Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    double s = Parallel ? k::parallel::dot(d.a, d.u, d.u) : k::serial::dot(d.a, d.u, d.u);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void max_abs(benchmark::State& state) {
  Data d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    double s = Parallel ? k::parallel::max_abs(d.a) : k::serial::max_abs(d.a);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {1000L, 10000L, 100000L, 1000000L}) b->Arg(n);
}

}  // namespace

BENCHMARK(residual<false>)->Name("semilinear_residual/serial")->Apply(sizes);
BENCHMARK(residual<true>)->Name("semilinear_residual/parallel")->Apply(sizes);
BENCHMARK(weighted_power<false>)->Name("weighted_power/serial")->Apply(sizes);
BENCHMARK(weighted_power<true>)->Name("weighted_power/parallel")->Apply(sizes);
BENCHMARK(dot<false>)->Name("dot/serial")->Apply(sizes);
BENCHMARK(dot<true>)->Name("dot/parallel")->Apply(sizes);
BENCHMARK(max_abs<false>)->Name("max_abs/serial")->Apply(sizes);
BENCHMARK(max_abs<true>)->Name("max_abs/parallel")->Apply(sizes);

BENCHMARK_MAIN();
