#include "specbound/lp_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "specbound/error.hpp"
#include "specbound/kernels.hpp"
#include "specbound/numerics.hpp"

namespace specbound {

LpSpace::LpSpace(std::size_t m, Exponent exponent) : dim(m), p(exponent) {
  if (m == 0) throw DomainError("LpSpace: dimension must be at least 1");
}

namespace {

// t^p for t in [0, 1]; exponents that are multiples of 1/2 avoid std::pow.
struct PowerFn {
  double p;
  int whole = 0;
  bool half = false;
  bool fast = false;

  explicit PowerFn(double exponent) : p(exponent) {
    const double twice = 2.0 * exponent;
    if (twice == std::floor(twice) && twice <= 16.0) {
      fast = true;
      whole = static_cast<int>(std::floor(exponent));
      half = twice - 2.0 * whole == 1.0;
    }
  }
  double operator()(double t) const {
    if (!fast) return std::pow(t, p);
    double r = half ? std::sqrt(t) : 1.0;
    for (int i = 0; i < whole; ++i) r *= t;
    return r;
  }
};

}  // namespace

double theta_exponent(Exponent p, Exponent q) {
  return std::max(0.0, p.reciprocal() - q.reciprocal());
}

double lp_norm(std::span<const double> x, Exponent p) {
  if (x.empty()) throw std::invalid_argument("lp_norm: empty vector");
  double amax = 0.0;
  for (double v : x) amax = std::max(amax, std::abs(v));
  if (p.is_infinite() || amax == 0.0) return amax;
  if (p.is_one()) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  // Scale by the largest magnitude so |x_j|^p neither overflows nor underflows.
  double s = 0.0;
  if (p.is_two()) {
    for (double v : x) {
      const double t = v / amax;
      s += t * t;
    }
    return amax * std::sqrt(s);
  }
  const double pv = p.value();
  const PowerFn power(pv);
  for (double v : x) s += power(std::abs(v) / amax);
  return amax * std::pow(s, 1.0 / pv);
}

NormEquivBounds norm_equiv_bounds(std::span<const double> x, Exponent p, Exponent q) {
  const double d = static_cast<double>(x.size());
  const double np = lp_norm(x, p);
  NormEquivBounds out{};
  out.lower = std::pow(d, -theta_exponent(p, q)) * np;
  out.upper = std::pow(d, theta_exponent(q, p)) * np;
  out.value_q = lp_norm(x, q);
  const double slack = 1e-12 * std::max(1.0, out.upper);
  if (out.value_q < out.lower - slack || out.value_q > out.upper + slack) {
    throw std::logic_error("norm_equiv_bounds: ||x||_q outside the equivalence sandwich");
  }
  return out;
}

void sample_lp_point(Exponent p, Surface surface, SeededRng& rng, std::span<double> out) {
  const std::size_t m = out.size();
  if (m == 0) return;
  if (p.is_infinite()) {
    for (double& v : out) v = rng.uniform(-1.0, 1.0);
    if (surface == Surface::sphere) {
      const std::size_t face = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng.engine());
      out[face] = rng.sign();
    }
    return;
  }

  for (;;) {
    if (p.is_two()) {
      for (double& v : out) v = rng.normal();
    } else if (p.is_one()) {
      std::exponential_distribution<double> expo(1.0);
      for (double& v : out) v = rng.sign() * expo(rng.engine());
    } else {
      // |v_j|^p is the gamma draw itself, so the l_p norm comes from their sum.
      const double inv_p = p.reciprocal();
      std::gamma_distribution<double> gamma(inv_p, 1.0);
      double sum = 0.0;
      for (double& v : out) {
        const double g = gamma(rng.engine());
        sum += g;
        v = rng.sign() * std::pow(g, inv_p);
      }
      const double norm = std::pow(sum, inv_p);
      if (norm > 0.0 && std::isfinite(norm)) {
        for (double& v : out) v /= norm;
        break;
      }
      continue;
    }
    const double norm = lp_norm(out, p);
    if (norm > 0.0 && std::isfinite(norm)) {
      for (double& v : out) v /= norm;
      break;
    }
  }
  if (surface == Surface::ball) {
    const double radius = std::pow(rng.uniform01(), 1.0 / static_cast<double>(m));
    for (double& v : out) v *= radius;
  }
}

Matrix sample_lp(const LpSpace& space, Surface surface, std::size_t n, const SeededRng& rng) {
  Matrix out(n, space.dim);
  const std::size_t blocks = kernels::block_count(n);
#pragma omp parallel for schedule(static) num_threads(kernels::configured_threads())
  for (std::size_t b = 0; b < blocks; ++b) {
    SeededRng local = rng.split(b);
    const std::size_t end = std::min(n, (b + 1) * kernels::kSampleBlock);
    for (std::size_t i = b * kernels::kSampleBlock; i < end; ++i) {
      sample_lp_point(space.p, surface, local, out.row(i));
    }
  }
  return out;
}

SphereVariance sigma2(const LpSpace& space) {
  const double m = static_cast<double>(space.dim);
  SphereVariance out{};
  if (space.p.is_infinite()) {
    // Face sampler: one coordinate is +-1 (variance 1), the rest U[-1,1] (1/3).
    out.exact = (m + 2.0) / (3.0 * m);
    out.asymptotic = 1.0 / 3.0;
    out.bound = 1.0 / 3.0;
    return out;
  }
  const double p = space.p.value();
  out.exact = std::exp(log_gamma(m / p) + log_gamma(3.0 / p) - log_gamma(1.0 / p) -
                       log_gamma((m + 2.0) / p));
  out.asymptotic = std::exp((2.0 / p) * std::log(p) + log_gamma(3.0 / p) - log_gamma(1.0 / p) -
                            (2.0 / p) * std::log(m));
  out.bound = (p < 2.0 ? 2.0 : 1.0) * std::pow(m, -2.0 / p);
  return out;
}

}  // namespace specbound
