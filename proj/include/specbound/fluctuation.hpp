#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specbound/and_analysis.hpp"
#include "specbound/exponent.hpp"
#include "specbound/lp_geometry.hpp"
#include "specbound/matrix.hpp"
#include "specbound/rng.hpp"
#include "specbound/spectral.hpp"

namespace specbound {

enum class Activation { identity, tanh, relu };
std::string to_string(Activation a);
// Throws std::invalid_argument on an unknown name.
Activation parse_activation(std::string_view name);

struct Layer {
  Matrix weights;  // out x in
  std::vector<double> bias;
  Activation activation = Activation::identity;
};

/// A feed-forward map x -> act_L(W_L ... act_1(W_1 x + b_1) ... + b_L).
class VectorMap {
 public:
  // Throws DimensionError if consecutive layers do not compose or a bias has
  // the wrong length, std::invalid_argument if there are no layers.
  explicit VectorMap(std::vector<Layer> layers);

  std::size_t input_dim() const { return layers_.front().weights.cols(); }
  std::size_t output_dim() const { return layers_.back().weights.rows(); }
  const std::vector<Layer>& layers() const { return layers_; }

 private:
  std::vector<Layer> layers_;
};

std::vector<double> eval_map(const VectorMap& h, std::span<const double> x);

// Smallest |pre-activation| over all relu units at x; +inf without relu layers.
double min_relu_margin(const VectorMap& h, std::span<const double> x);

/// Central-difference Jacobian; column j uses tau = step * max(1, |x_j|).
Matrix jacobian_fd(const VectorMap& h, std::span<const double> x, double step = 1e-6);

struct FluctuationOptions {
  double eps_probe = 1e-4;
  Surface probe = Surface::sphere;
  double fd_step = 1e-6;
  // x is nudged by a seeded offset of this size while some relu
  // pre-activation sits within kink_margin of zero.
  double kink_margin = 1e-7;
  double kink_offset = 1e-6;
  InducedNormBudget budget;
};

struct FluctuationReport {
  double delta_max = 0.0;
  NormKind delta_max_kind = NormKind::exact;
  std::string method = "jacobian-norm";
  double delta_avg = 0.0;
  double delta_avg_std_error = 0.0;
  std::size_t n = 0;
  double ratio = 0.0;
  double ratio_std_error = 0.0;
  double corrected_bound = 0.0;
  double rank_bound = 0.0;
  double dimension_bound = 0.0;
  double eps = 0.0;
  Surface probe = Surface::sphere;
  double sigma1 = 0.0;
  double frobenius = 0.0;
  std::size_t rank = 0;
  bool x_shifted = false;
  std::vector<double> x;  // point actually probed
  Matrix jacobian;
};

/// Mean of ||h(x + eps u) - h(x)||_q / eps over u uniform on the l_p sphere
/// (or ball) of the input space.
AndEstimate average_fluctuation(const VectorMap& h, std::span<const double> x, Exponent p,
                                Exponent q, std::size_t n, double eps, Surface probe,
                                const SeededRng& rng);

namespace serial {
AndEstimate average_fluctuation(const VectorMap& h, std::span<const double> x, Exponent p,
                                Exponent q, std::size_t n, double eps, Surface probe,
                                const SeededRng& rng);
}

/// Worst-case rate ||J||_{p,q} against the probed average rate, with the
/// spectral lower bounds on their ratio. Throws DomainError when the Jacobian
/// or the average rate vanishes.
FluctuationReport fluctuation_certificate(const VectorMap& h, std::span<const double> x,
                                          Exponent p, Exponent q, std::size_t n,
                                          const SeededRng& rng,
                                          const FluctuationOptions& options = {});

}  // namespace specbound
