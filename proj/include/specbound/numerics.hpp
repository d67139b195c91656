#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace specbound {

// ln Gamma(a) for a > 0.
double log_gamma(double a);

// Standard normal CDF.
double std_normal_cdf(double x);

/// Regularized incomplete beta I_x(a, b) = B(x; a, b) / B(a, b).
///
/// Evaluated with the modified Lentz continued fraction; for x above
/// (a + 1) / (a + b + 2) the reflection I_x(a, b) = 1 - I_{1-x}(b, a) is used so
/// the fraction always converges quickly. Absolute error is below 1e-10 on the
/// whole unit interval.
double reg_inc_beta(double x, double a, double b);

/// Samples (xs[i], ys[i]) of a real function on a strictly increasing grid.
class Grid1D {
 public:
  // Throws std::invalid_argument on length mismatch, fewer than 2 points,
  // non-finite values or xs not strictly increasing.
  Grid1D(std::vector<double> xs, std::vector<double> ys);

  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  std::size_t size() const { return xs_.size(); }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// Smallest concave majorant of a sampled function, i.e. the upper convex hull
/// of the sample points, evaluated by linear interpolation between hull
/// vertices. Outside [xs.front(), xs.back()] the nearest endpoint value is
/// returned.
class ConcaveEnvelope {
 public:
  // clamp_to_one caps values at 1 (for total-variation type curves).
  explicit ConcaveEnvelope(const Grid1D& samples, bool clamp_to_one = false);

  double operator()(double x) const;

  std::span<const double> hull_xs() const { return hull_x_; }
  std::span<const double> hull_ys() const { return hull_y_; }

 private:
  std::vector<double> hull_x_;
  std::vector<double> hull_y_;
  bool clamp_to_one_;
};

ConcaveEnvelope concave_envelope(const Grid1D& samples, bool clamp_to_one = false);

}  // namespace specbound
