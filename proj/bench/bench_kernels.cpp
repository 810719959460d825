// Serial reference vs OpenMP kernels: deposition, interpolation, pairwise sum.
#include <benchmark/benchmark.h>

#include <vector>

#include "vortex/biot_savart.hpp"
#include "vortex/initial_data.hpp"
#include "vortex/kernels/deposit.hpp"
#include "vortex/kernels/interpolate.hpp"
#include "vortex/kernels/pairwise.hpp"

namespace {

using namespace vortex;

std::vector<Vec2> points(std::size_t n) { return uniform_ensemble(n, 7, 0).plus; }

template <bool Parallel>
void BM_Deposit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec grid(128);
  const Mollifier m(0.2, static_cast<double>(n));
  const auto x = points(n);
  std::vector<double> out(grid.points());
  for (auto _ : state) {
    std::fill(out.begin(), out.end(), 0.0);
    if constexpr (Parallel) {
      kernels::omp::deposit(x, 1.0 / n, m, grid, true, out);
    } else {
      kernels::serial::deposit(x, 1.0 / n, m, grid, true, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <bool Parallel>
void BM_Interpolate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec grid(128);
  const SpectralField a = SpectralField::from_function(grid, [](double x, double y) { return std::sin(x) * std::cos(y); });
  const auto x = points(n);
  std::vector<Vec2> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::interpolate(a.values(), a.values(), grid, x, out);
    } else {
      kernels::serial::interpolate(a.values(), a.values(), grid, x, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <bool Parallel>
void BM_Pairwise(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec grid(128);
  const Mollifier m(0.2, static_cast<double>(n));
  const KernelTable table = mollified_kernel_table(grid, m);
  const auto x = points(n);
  std::vector<Vec2> out(n);
  for (auto _ : state) {
    std::fill(out.begin(), out.end(), Vec2{0.0, 0.0});
    if constexpr (Parallel) {
      kernels::omp::pairwise_velocity(x, x, 1.0 / n, true, table, out);
    } else {
      kernels::serial::pairwise_velocity(x, x, 1.0 / n, true, table, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}

}  // namespace

BENCHMARK(BM_Deposit<false>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_Deposit<true>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_Interpolate<false>)->Arg(4096)->Arg(16384);
BENCHMARK(BM_Interpolate<true>)->Arg(4096)->Arg(16384);
BENCHMARK(BM_Pairwise<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_Pairwise<true>)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
