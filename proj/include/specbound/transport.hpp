#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "specbound/exponent.hpp"
#include "specbound/matrix.hpp"

namespace specbound {

/// Weighted atoms: one point per row of `points`.
class EmpiricalSample {
 public:
  // Uniform weights 1/n.
  explicit EmpiricalSample(Matrix points);
  // Throws DomainError unless weights are nonnegative and sum to 1 within
  // 1e-12; DimensionError on a length mismatch.
  EmpiricalSample(Matrix points, std::vector<double> weights);

  std::size_t size() const { return points_.rows(); }
  std::size_t dim() const { return points_.cols(); }
  const Matrix& points() const { return points_; }
  std::span<const double> point(std::size_t i) const { return points_.row(i); }
  const std::vector<double>& weights() const { return weights_; }
  bool uniform() const { return uniform_; }

 private:
  Matrix points_;
  std::vector<double> weights_;
  bool uniform_ = true;
};

/// Which pairs (x, x') an adversary may move between.
class AttackModel {
 public:
  using Predicate = std::function<bool(std::span<const double>, std::span<const double>)>;

  // ||x - x'||_p <= eps.
  static AttackModel metric(Exponent p, double eps);
  // Arbitrary relation; should be symmetric for the duality identities.
  static AttackModel predicate(Predicate pred);

  bool allows(std::span<const double> x, std::span<const double> y) const;
  bool is_metric() const { return metric_; }
  Exponent p() const { return p_; }
  double eps() const { return eps_; }

 private:
  AttackModel() = default;
  bool metric_ = true;
  Exponent p_ = 2.0;
  double eps_ = 0.0;
  Predicate pred_;
};

// adj[i] lists the right atoms j with model.allows(a_i, b_j).
std::vector<std::vector<std::size_t>> attack_graph(const EmpiricalSample& a,
                                                   const EmpiricalSample& b,
                                                   const AttackModel& model);

struct PlanEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double mass = 0.0;
};

struct TransportResult {
  double value = 0.0;
  double matched_mass = 0.0;
  double unmatched_left = 0.0;   // vertex count (matching) or mass (max-flow)
  double unmatched_right = 0.0;
  std::size_t matching_size = 0;  // matching mode only
  std::vector<PlanEntry> plan;
};

/// Maximum-cardinality bipartite matching (Hopcroft-Karp). Returns, for each
/// left vertex, its partner or SIZE_MAX.
std::vector<std::size_t> hopcroft_karp(const std::vector<std::vector<std::size_t>>& adj,
                                       std::size_t n_right);

// Greedy maximal matching; a fast approximation of the maximum.
std::vector<std::size_t> greedy_matching(const std::vector<std::vector<std::size_t>>& adj,
                                         std::size_t n_right);

enum class MatchingAlgorithm { hopcroft_karp, greedy_maximal };

/// TV_eps between two uniform samples: (1/2)(u1/n1 + u2/n2) with u_k the
/// unmatched vertex counts of the matching. Throws std::invalid_argument for
/// non-uniform samples (use ot_maxflow).
TransportResult tv_eps_matching(const EmpiricalSample& a, const EmpiricalSample& b,
                                const AttackModel& model,
                                MatchingAlgorithm algorithm = MatchingAlgorithm::hopcroft_karp);

/// OT cost of the 0/1 attack cost, 1 - (max mass moved along allowed edges),
/// by Dinic max-flow.
TransportResult ot_maxflow(const EmpiricalSample& a, const EmpiricalSample& b,
                           const AttackModel& model);

/// max over U subset of supp(a) of a(U) - b(N(U)), N(U) the allowed
/// neighbourhood of U. Throws UnsupportedError when a has more than 20 atoms.
double strassen_enumerate(const EmpiricalSample& a, const EmpiricalSample& b,
                          const AttackModel& model);

}  // namespace specbound
