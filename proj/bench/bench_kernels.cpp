// Parallel kernels against their serial references. Set SPECBOUND_THREADS to
// pin the parallel thread count.

#include <vector>

#include <benchmark/benchmark.h>

#include "specbound/kernels.hpp"
#include "specbound/spectral.hpp"

using namespace specbound;

namespace {

Matrix random_matrix(std::size_t k, std::size_t m) {
  SeededRng rng(42);
  Matrix a(k, m);
  for (auto& v : a.data()) v = rng.normal();
  return a;
}

const std::vector<Exponent> kQs{1.0, 2.0, 3.0, Exponent::infinity()};

template <bool Parallel>
void BM_ImageNormMoments(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(dim, dim);
  const std::size_t n = 50000;
  for (auto _ : state) {
    auto r = Parallel ? kernels::image_norm_moments(a, 1.5, kQs, n, SeededRng(1))
                      : kernels::serial::image_norm_moments(a, 1.5, kQs, n, SeededRng(1));
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <bool Parallel>
void BM_VertexSearch(benchmark::State& state) {
  const Matrix a = random_matrix(8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto r = Parallel ? kernels::linf_vertex_search(a, kQs) : kernels::serial::linf_vertex_search(a, kQs);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_Ascent(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(dim, dim);
  const InducedNormBudget budget{.restarts = 16, .iterations = 200, .seed = 3};
  for (auto _ : state) {
    auto r = Parallel ? induced_norm_ascent(a, 1.5, 3.0, budget)
                      : serial::induced_norm_ascent(a, 1.5, 3.0, budget);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_ImageNormMoments<false>)->Name("image_norm_moments/serial")->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ImageNormMoments<true>)->Name("image_norm_moments/parallel")->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_VertexSearch<false>)->Name("linf_vertex_search/serial")->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VertexSearch<true>)->Name("linf_vertex_search/parallel")->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Ascent<false>)->Name("induced_norm_ascent/serial")->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ascent<true>)->Name("induced_norm_ascent/parallel")->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
