#include "specbound/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "specbound/error.hpp"

namespace specbound {

double log_gamma(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("log_gamma: argument must be a positive finite real, got " +
                      std::to_string(a));
  }
  return std::lgamma(a);
}

double std_normal_cdf(double x) {
  if (std::isnan(x)) return x;
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace {

// Continued fraction for I_x(a, b) (Numerical Recipes betacf form),
// evaluated with the modified Lentz method.
double beta_continued_fraction(double x, double a, double b) {
  constexpr int kMaxIterations = 100000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("reg_inc_beta: continued fraction did not converge");
}

}  // namespace

double reg_inc_beta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("reg_inc_beta: x must lie in [0, 1], got " + std::to_string(x));
  }
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("reg_inc_beta: shape parameters must be positive and finite");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::clamp(front * beta_continued_fraction(x, a, b) / a, 0.0, 1.0);
  }
  return std::clamp(1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b, 0.0, 1.0);
}

Grid1D::Grid1D(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size()) {
    throw std::invalid_argument("Grid1D: xs and ys must have equal length");
  }
  if (xs_.size() < 2) {
    throw std::invalid_argument("Grid1D: at least two points are required");
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) {
      throw std::invalid_argument("Grid1D: non-finite sample");
    }
    if (i > 0 && !(xs_[i] > xs_[i - 1])) {
      throw std::invalid_argument("Grid1D: xs must be strictly increasing");
    }
  }
}

ConcaveEnvelope::ConcaveEnvelope(const Grid1D& samples, bool clamp_to_one)
    : clamp_to_one_(clamp_to_one) {
  const auto xs = samples.xs();
  const auto ys = samples.ys();
  // Monotone-chain upper hull; points arrive sorted by x.
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (hull_x_.size() >= 2) {
      const std::size_t n = hull_x_.size();
      const double ox = hull_x_[n - 2], oy = hull_y_[n - 2];
      const double ax = hull_x_[n - 1], ay = hull_y_[n - 1];
      // Drop the middle vertex when it lies on or below the chord.
      const double cross = (ax - ox) * (ys[i] - oy) - (ay - oy) * (xs[i] - ox);
      if (cross >= 0.0) {
        hull_x_.pop_back();
        hull_y_.pop_back();
      } else {
        break;
      }
    }
    hull_x_.push_back(xs[i]);
    hull_y_.push_back(ys[i]);
  }
}

double ConcaveEnvelope::operator()(double x) const {
  double value;
  if (x <= hull_x_.front()) {
    value = hull_y_.front();
  } else if (x >= hull_x_.back()) {
    value = hull_y_.back();
  } else {
    const auto it = std::upper_bound(hull_x_.begin(), hull_x_.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - hull_x_.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - hull_x_[lo]) / (hull_x_[hi] - hull_x_[lo]);
    value = hull_y_[lo] + w * (hull_y_[hi] - hull_y_[lo]);
  }
  return clamp_to_one_ ? std::min(value, 1.0) : value;
}

ConcaveEnvelope concave_envelope(const Grid1D& samples, bool clamp_to_one) {
  return ConcaveEnvelope(samples, clamp_to_one);
}

}  // namespace specbound
