#pragma once

#include <cstdint>
#include <random>

namespace specbound {

/// A reproducible random source identified by (seed, stream).
///
/// Identical (seed, stream) pairs always produce identical draw sequences.
/// Parallel kernels never share an engine: work item i draws from split(i),
/// so results depend only on the partition of the work, not on thread count.
class SeededRng {
 public:
  using Engine = std::mt19937_64;

  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Child stream; distinct indices give statistically independent streams.
  SeededRng split(std::uint64_t index) const;

  Engine& engine() { return engine_; }

  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  // +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  Engine engine_;
};

}  // namespace specbound
