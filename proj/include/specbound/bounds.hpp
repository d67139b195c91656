#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "specbound/exponent.hpp"
#include "specbound/matrix.hpp"
#include "specbound/numerics.hpp"

namespace specbound {

// Lower bounds on the adversarial Bayes error. Every evaluator returns a value
// in [0, 1/2].

/// Increasing convex M with M(0) = 0 controlling class-conditional spread.
class MomentFunction {
 public:
  // M(r) = r^p, p >= 1.
  static MomentFunction power(double p);
  // M(r) = exp(r^2 / sigma^2) - 1, sigma > 0.
  static MomentFunction subgaussian(double sigma);

  double operator()(double r) const;
  // Exact inverse on [0, inf); throws DomainError for negative or non-finite y.
  double inverse(double y) const;
  std::string describe() const;

 private:
  enum class Kind { power, subgaussian };
  MomentFunction(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_;
  double param_;
};

/// TV between N(mu_1, S) and N(mu_2, S) at Mahalanobis distance d: 2 Phi(d/2) - 1.
double gaussian_tv(double delta_norm);

/// Mean difference of two Gaussians sharing a covariance, given either as the
/// diagonal of variances or as a full PSD matrix.
struct GaussianPair {
  std::vector<double> delta;
  std::variant<std::vector<double>, Matrix> sigma;
};

struct Deflation {
  double delta_eps = 0.0;     // the value used downstream
  double lower = 0.0;         // equal to delta_eps for diagonal covariance
  double upper = 0.0;
  bool exact = true;          // false for the full-covariance envelope
  std::vector<double> s_vector;  // diagonal case only
  std::vector<double> z_opt;  // optimal l_inf-bounded shift of the mean difference
};

/// Mahalanobis distance left between the means after an l_inf adversary of
/// budget eps moves one of them. With diagonal variances v_j this is
/// ||s||_2, s_j = (|delta_j| - eps)_+ / sqrt(v_j). For a full covariance the
/// returned value is the distance at the coordinatewise-optimal shift
/// (an upper bound), with the lower bound ||(|delta| - eps)_+||_2 / sqrt(lambda_max).
/// Throws DomainError for a covariance that is not PSD (or singular, when full).
Deflation linf_deflation(const GaussianPair& pair, double eps);

/// 1 - Phi(delta_eps / 2).
double gaussian_err_bound(const GaussianPair& pair, double eps);

// Tail function t -> P(||X - mu|| > t) bound for the light-tail theorem.
using TailFunction = std::function<double(double)>;
// 2 m exp(-t^2 / (2 sigma^2)), the l_inf tail of an m-dimensional N(0, sigma^2 I).
TailFunction gaussian_linf_tail(std::size_t m, double sigma);

struct LightTail {
  TailFunction tail;
};
struct MomentTail {
  MomentFunction M;
  double alpha = 0.0;
};
struct WassersteinTail {
  double W = 0.0;
  double p = 1.0;
};
using TailKind = std::variant<LightTail, MomentTail, WassersteinTail>;

/// With e = (eps - mu_dist) / 2:
///   light tail   1/2 - tail(e)
///   moment       (1/2)(1 - min(1, alpha / M(e)))   (ratio 1 when e <= 0)
///   Wasserstein  (1/2)(1 - (W / eps)^p)
/// all clamped to [0, 1/2]. Light tail requires eps >= mu_dist.
double tail_moment_bound(const TailKind& kind, double eps, double mu_dist);

/// (1/2)(1 - t * env(2 M^{-1}(alpha / t) + delta_means)), env the concave
/// envelope (capped at 1) of the running maximum of theta on its grid.
double kingkong_bound(double t, const MomentFunction& M, double alpha, double delta_means,
                      const Grid1D& theta);

/// (1/2)(1 - t (2 Phi(M^{-1}(alpha / t) / c) - 1)).
double uap_bound(double t, const MomentFunction& M, double alpha, double c);

struct NoiseDesign {
  Matrix sigma_tilde;
  double alpha_star = 0.0;
  double err_lower_bound = 0.0;
  double sigma = 0.0;  // sum_{j <= r} sigma_j / sqrt(m)
  std::size_t rank = 0;
};

/// Optimal rank-r noise covariance with per-coordinate power sigma0_sq
/// against the PSD matrix sigma0. The error bound uses the caller's (t, delta).
NoiseDesign noise_design(const Matrix& sigma0, std::size_t r, double sigma0_sq, double t = 1.0,
                         double delta = 0.0);

/// TV contraction constant of an eps-ball attack on a domain of diameter diam
/// in (R^m, l_p), p in {2, inf}; other p throw UnsupportedError.
double contraction_constant(std::size_t m, Exponent p, double diam, double eps);

}  // namespace specbound
