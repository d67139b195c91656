#include "specbound/kernels.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "specbound/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specbound::kernels {

void RunningMoments::merge(const RunningMoments& o) {
  if (o.count == 0) return;
  if (count == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(o.count);
  const double n = na + nb;
  const double delta = o.mean - mean;
  mean += delta * nb / n;
  m2 += o.m2 + delta * delta * na * nb / n;
  count += o.count;
}

double RunningMoments::standard_error() const {
  if (count < 2) return 0.0;
  return std::sqrt(sample_variance() / static_cast<double>(count));
}

std::size_t block_count(std::size_t n) { return (n + kSampleBlock - 1) / kSampleBlock; }

int configured_threads() {
  static const int threads = [] {
    if (const char* env = std::getenv("SPECBOUND_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
  }();
  return threads;
}

void apply_thread_config() {
#ifdef _OPENMP
  omp_set_num_threads(configured_threads());
#endif
}

namespace detail {

std::vector<RunningMoments> merge_blocks(const std::vector<std::vector<RunningMoments>>& blocks,
                                         std::size_t n_values) {
  std::vector<RunningMoments> total(n_values);
  for (const auto& b : blocks)
    for (std::size_t v = 0; v < n_values && v < b.size(); ++v) total[v].merge(b[v]);
  return total;
}

}  // namespace detail

namespace {

struct ImageNorms {
  const Matrix* a;
  std::span<const Exponent> qs;
  std::vector<double> y;

  void operator()(std::span<const double> u, std::span<double> values) {
    y.resize(a->rows());
    a->apply_into(u, y);
    for (std::size_t i = 0; i < qs.size(); ++i) values[i] = lp_norm(y, qs[i]);
  }
};

void check_vertex_dims(const Matrix& a) {
  if (a.cols() == 0 || a.rows() == 0) throw DimensionError("vertex search: empty matrix");
  if (a.cols() > 40) throw UnsupportedError("vertex search: more than 40 columns");
}

}  // namespace

std::vector<RunningMoments> image_norm_moments(const Matrix& a, Exponent p,
                                               std::span<const Exponent> qs, std::size_t n,
                                               const SeededRng& rng) {
  return sample_moments(a.cols(), p, Surface::sphere, n, qs.size(), rng,
                        ImageNorms{&a, qs, {}});
}

VertexSearchResult linf_vertex_search(const Matrix& a, std::span<const Exponent> qs) {
  check_vertex_dims(a);
  const std::size_t m = a.cols();
  const std::size_t k = a.rows();
  const std::uint64_t patterns = std::uint64_t{1} << (m - 1);
  const std::uint64_t chunk = std::min<std::uint64_t>(patterns, 4096);
  const std::uint64_t chunks = patterns / chunk;
  const std::size_t nq = qs.size();

  // Column-major copy so a sign flip touches contiguous memory.
  std::vector<double> cols(m * k);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < k; ++i) cols[j * k + i] = a(i, j);

  std::vector<std::vector<double>> chunk_best(chunks, std::vector<double>(nq, -1.0));
  std::vector<std::vector<std::uint64_t>> chunk_arg(chunks, std::vector<std::uint64_t>(nq, 0));

#pragma omp parallel for schedule(dynamic) num_threads(configured_threads())
  for (std::uint64_t c = 0; c < chunks; ++c) {
    std::vector<double> s(m, 1.0);
    std::vector<double> y(k, 0.0);
    const std::uint64_t first = c * chunk;
    const std::uint64_t gray = first ^ (first >> 1);
    for (std::size_t j = 0; j + 1 < m; ++j) s[j] = ((gray >> j) & 1U) ? -1.0 : 1.0;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < k; ++i) y[i] += s[j] * cols[j * k + i];

    auto& best = chunk_best[c];
    auto& arg = chunk_arg[c];
    for (std::uint64_t idx = first; idx < first + chunk; ++idx) {
      if (idx != first) {
        const auto j = static_cast<std::size_t>(std::countr_zero(idx));
        s[j] = -s[j];
        const double step = 2.0 * s[j];
        const double* col = cols.data() + j * k;
        for (std::size_t i = 0; i < k; ++i) y[i] += step * col[i];
      }
      for (std::size_t q = 0; q < nq; ++q) {
        const double v = lp_norm(y, qs[q]);
        if (v > best[q]) {
          best[q] = v;
          arg[q] = idx;
        }
      }
    }
  }

  VertexSearchResult out;
  out.value.assign(nq, -1.0);
  out.vertex.assign(nq, std::vector<double>(m, 1.0));
  std::vector<std::uint64_t> best_idx(nq, 0);
  for (std::uint64_t c = 0; c < chunks; ++c)
    for (std::size_t q = 0; q < nq; ++q)
      if (chunk_best[c][q] > out.value[q]) {
        out.value[q] = chunk_best[c][q];
        best_idx[q] = chunk_arg[c][q];
      }
  // Recompute the winners from scratch to shed incremental round-off.
  for (std::size_t q = 0; q < nq; ++q) {
    const std::uint64_t gray = best_idx[q] ^ (best_idx[q] >> 1);
    for (std::size_t j = 0; j + 1 < m; ++j) out.vertex[q][j] = ((gray >> j) & 1U) ? -1.0 : 1.0;
    out.value[q] = lp_norm(a.apply(out.vertex[q]), qs[q]);
  }
  return out;
}

namespace serial {

std::vector<RunningMoments> image_norm_moments(const Matrix& a, Exponent p,
                                               std::span<const Exponent> qs, std::size_t n,
                                               const SeededRng& rng) {
  return serial::sample_moments(a.cols(), p, Surface::sphere, n, qs.size(), rng,
                                ImageNorms{&a, qs, {}});
}

VertexSearchResult linf_vertex_search(const Matrix& a, std::span<const Exponent> qs) {
  check_vertex_dims(a);
  const std::size_t m = a.cols();
  VertexSearchResult out;
  out.value.assign(qs.size(), -1.0);
  out.vertex.assign(qs.size(), std::vector<double>(m, 1.0));
  std::vector<double> s(m);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    for (std::size_t j = 0; j < m; ++j) s[j] = ((bits >> j) & 1U) ? -1.0 : 1.0;
    const auto y = a.apply(s);
    for (std::size_t q = 0; q < qs.size(); ++q) {
      const double v = lp_norm(y, qs[q]);
      if (v > out.value[q]) {
        out.value[q] = v;
        out.vertex[q] = s;
      }
    }
  }
  return out;
}

}  // namespace serial

}  // namespace specbound::kernels
