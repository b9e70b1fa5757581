// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include <random>

#include "poincare/kernels.hpp"
#include "poincare/kgradient.hpp"
#include "poincare/observables.hpp"

using namespace poincare;

namespace {

CArray random_array(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  CArray a(n);
  for (auto& v : a) v = Complex(d(rng), d(rng));
  return a;
}

template <bool Parallel>
void BM_TreeSum(benchmark::State& state) {
  const auto a = random_array(std::size_t(state.range(0)));
  for (auto _ : state) {
    auto term = [&](std::size_t i) { return std::norm(a[i]); };
    double s = Parallel ? kernels::tree_sum<double>(a.size(), term) : kernels::serial::tree_sum<double>(a.size(), term);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Difference(benchmark::State& state) {
  const int n = int(state.range(0));
  const std::array<int, 3> dims{n, n, n};
  const auto a = random_array(std::size_t(n) * n * n);
  CArray out(a.size());
  for (auto _ : state) {
    for (int axis = 0; axis < 3; ++axis) {
      if (Parallel) {
        kernels::difference_along_axis<Complex>(dims, 0.1, a, out, axis);
      } else {
        kernels::serial::difference_along_axis<Complex>(dims, 0.1, a, out, axis);
      }
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * 3 * std::int64_t(a.size()));
}

template <bool Parallel>
void BM_NonlocalPotential(benchmark::State& state) {
  const int n = int(state.range(0));
  GridPtr grid = make_grid(n, 0.5);
  RVecField src;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d;
  for (auto& c : src) {
    c.resize(grid->size());
    for (auto& v : c) v = d(rng);
  }
  for (auto _ : state) {
    auto a = Parallel ? nonlocal_potential(*grid, src) : serial::nonlocal_potential(*grid, src);
    benchmark::DoNotOptimize(a[0].data());
  }
}

}  // namespace

BENCHMARK(BM_TreeSum<false>)->Arg(1 << 18)->Arg(1 << 21);
BENCHMARK(BM_TreeSum<true>)->Arg(1 << 18)->Arg(1 << 21);
BENCHMARK(BM_Difference<false>)->Arg(64)->Arg(96);
BENCHMARK(BM_Difference<true>)->Arg(64)->Arg(96);
BENCHMARK(BM_NonlocalPotential<false>)->Arg(12)->Arg(16);
BENCHMARK(BM_NonlocalPotential<true>)->Arg(12)->Arg(16);

BENCHMARK_MAIN();
