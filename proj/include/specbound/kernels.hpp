#pragma once

// Data-parallel kernels. Every OpenMP kernel here has a serial counterpart in
// kernels::serial that the tests hold it against.
//
// Monte Carlo kernels split the n draws into fixed blocks of kSampleBlock; block
// b draws from rng.split(b) and the per-block moments are merged in block order.
// Parallel and serial versions therefore produce bit-identical results for any
// thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "specbound/exponent.hpp"
#include "specbound/lp_geometry.hpp"
#include "specbound/matrix.hpp"
#include "specbound/rng.hpp"

namespace specbound::kernels {

inline constexpr std::size_t kSampleBlock = 2048;

/// Streaming mean / variance (Welford), mergeable in a fixed order.
struct RunningMoments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double v) {
    ++count;
    const double d = v - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (v - mean);
  }
  void merge(const RunningMoments& o);
  double sample_variance() const {
    return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
  }
  double standard_error() const;
};

std::size_t block_count(std::size_t n);

// Number of threads the parallel kernels use (SPECBOUND_THREADS or all cores).
int configured_threads();
void apply_thread_config();

namespace detail {

template <class Fn>
void run_block(std::size_t block, std::size_t n, std::size_t dim, Exponent p, Surface surface,
               const SeededRng& rng, std::size_t n_values, Fn& fn,
               std::vector<RunningMoments>& out) {
  SeededRng local = rng.split(block);
  std::vector<double> u(dim);
  std::vector<double> values(n_values);
  out.assign(n_values, RunningMoments{});
  const std::size_t begin = block * kSampleBlock;
  const std::size_t end = std::min(n, begin + kSampleBlock);
  for (std::size_t s = begin; s < end; ++s) {
    sample_lp_point(p, surface, local, u);
    fn(std::span<const double>(u), std::span<double>(values));
    for (std::size_t v = 0; v < n_values; ++v) out[v].push(values[v]);
  }
}

std::vector<RunningMoments> merge_blocks(const std::vector<std::vector<RunningMoments>>& blocks,
                                         std::size_t n_values);

}  // namespace detail

/// Moments of n_values statistics of u ~ Unif(l_p sphere/ball of R^dim).
/// fn(u, values) fills `values` for one draw; it must be thread-safe.
template <class Fn>
std::vector<RunningMoments> sample_moments(std::size_t dim, Exponent p, Surface surface,
                                           std::size_t n, std::size_t n_values,
                                           const SeededRng& rng, Fn fn) {
  const std::size_t blocks = block_count(n);
  std::vector<std::vector<RunningMoments>> partial(blocks);
#pragma omp parallel for schedule(static) num_threads(configured_threads())
  for (std::size_t b = 0; b < blocks; ++b) {
    Fn local_fn = fn;
    detail::run_block(b, n, dim, p, surface, rng, n_values, local_fn, partial[b]);
  }
  return detail::merge_blocks(partial, n_values);
}

/// Monte Carlo moments of ||A u||_q for each q in qs, u uniform on the l_p sphere.
std::vector<RunningMoments> image_norm_moments(const Matrix& a, Exponent p,
                                               std::span<const Exponent> qs, std::size_t n,
                                               const SeededRng& rng);

/// Best vertex of the l_inf unit ball for ||A s||_q, s in {+-1}^m, for each q.
/// Enumerates 2^{m-1} sign patterns (s and -s give the same value) in Gray-code
/// order, chunked across threads. Ties go to the smallest pattern index.
struct VertexSearchResult {
  std::vector<double> value;               // per q
  std::vector<std::vector<double>> vertex;  // per q, entries +-1
};
VertexSearchResult linf_vertex_search(const Matrix& a, std::span<const Exponent> qs);

namespace serial {

template <class Fn>
std::vector<RunningMoments> sample_moments(std::size_t dim, Exponent p, Surface surface,
                                           std::size_t n, std::size_t n_values,
                                           const SeededRng& rng, Fn fn) {
  const std::size_t blocks = block_count(n);
  std::vector<std::vector<RunningMoments>> partial(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    detail::run_block(b, n, dim, p, surface, rng, n_values, fn, partial[b]);
  }
  return detail::merge_blocks(partial, n_values);
}

std::vector<RunningMoments> image_norm_moments(const Matrix& a, Exponent p,
                                               std::span<const Exponent> qs, std::size_t n,
                                               const SeededRng& rng);

// Plain enumeration of all 2^m sign vectors, recomputing A s from scratch.
VertexSearchResult linf_vertex_search(const Matrix& a, std::span<const Exponent> qs);

}  // namespace serial

}  // namespace specbound::kernels
