#include "specbound/fluctuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "specbound/error.hpp"
#include "specbound/kernels.hpp"

namespace specbound {

std::string to_string(Activation a) {
  switch (a) {
    case Activation::identity: return "identity";
    case Activation::tanh: return "tanh";
    case Activation::relu: return "relu";
  }
  return "unknown";
}

Activation parse_activation(std::string_view name) {
  if (name == "identity" || name == "linear") return Activation::identity;
  if (name == "tanh") return Activation::tanh;
  if (name == "relu") return Activation::relu;
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

VectorMap::VectorMap(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("VectorMap: no layers");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    if (layer.weights.empty()) throw DimensionError("VectorMap: empty weight matrix");
    if (layer.bias.size() != layer.weights.rows()) {
      throw DimensionError("VectorMap: bias length does not match layer " + std::to_string(l));
    }
    if (l > 0 && layer.weights.cols() != layers_[l - 1].weights.rows()) {
      throw DimensionError("VectorMap: layer " + std::to_string(l) +
                           " does not compose with its predecessor");
    }
  }
}

namespace {

double activate(Activation a, double z) {
  switch (a) {
    case Activation::identity: return z;
    case Activation::tanh: return std::tanh(z);
    case Activation::relu: return z > 0.0 ? z : 0.0;
  }
  return z;
}

// Forward pass into caller-owned buffers; returns the output buffer.
const std::vector<double>& forward(const VectorMap& h, std::span<const double> x,
                                   std::vector<double>& cur, std::vector<double>& next,
                                   double* relu_margin = nullptr) {
  if (x.size() != h.input_dim()) {
    throw DimensionError("eval_map: input has length " + std::to_string(x.size()) +
                         ", map expects " + std::to_string(h.input_dim()));
  }
  cur.assign(x.begin(), x.end());
  for (const auto& layer : h.layers()) {
    next.resize(layer.weights.rows());
    layer.weights.apply_into(cur, next);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const double z = next[i] + layer.bias[i];
      if (relu_margin && layer.activation == Activation::relu) {
        *relu_margin = std::min(*relu_margin, std::abs(z));
      }
      next[i] = activate(layer.activation, z);
    }
    std::swap(cur, next);
  }
  return cur;
}

struct ProbeNorm {
  const VectorMap* h;
  std::span<const double> x;
  std::span<const double> hx;
  double eps;
  Exponent q;
  std::vector<double> shifted, cur, next, diff;

  void operator()(std::span<const double> u, std::span<double> values) {
    shifted.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) shifted[j] = x[j] + eps * u[j];
    const auto& y = forward(*h, shifted, cur, next);
    diff.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) diff[i] = y[i] - hx[i];
    values[0] = lp_norm(diff, q) / eps;
  }
};

void check_probe(double eps, std::size_t n) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("average_fluctuation: eps must be positive and finite");
  }
  if (n < 2) throw std::invalid_argument("average_fluctuation: need at least 2 samples");
}

template <bool Parallel>
AndEstimate average_fluctuation_impl(const VectorMap& h, std::span<const double> x, Exponent p,
                                     Exponent q, std::size_t n, double eps, Surface probe,
                                     const SeededRng& rng) {
  check_probe(eps, n);
  const auto hx = eval_map(h, x);
  ProbeNorm fn{&h, x, hx, eps, q, {}, {}, {}, {}};
  std::vector<kernels::RunningMoments> mom;
  if constexpr (Parallel) {
    mom = kernels::sample_moments(h.input_dim(), p, probe, n, 1, rng, fn);
  } else {
    mom = kernels::serial::sample_moments(h.input_dim(), p, probe, n, 1, rng, fn);
  }
  AndEstimate e;
  e.mean = mom[0].mean;
  e.std_error = mom[0].standard_error();
  e.n = n;
  e.p = p;
  e.q = q;
  e.seed = rng.seed();
  return e;
}

}  // namespace

std::vector<double> eval_map(const VectorMap& h, std::span<const double> x) {
  std::vector<double> cur, next;
  return forward(h, x, cur, next);
}

double min_relu_margin(const VectorMap& h, std::span<const double> x) {
  std::vector<double> cur, next;
  double margin = std::numeric_limits<double>::infinity();
  forward(h, x, cur, next, &margin);
  return margin;
}

Matrix jacobian_fd(const VectorMap& h, std::span<const double> x, double step) {
  if (!(step > 0.0)) throw DomainError("jacobian_fd: step must be positive");
  const std::size_t m = h.input_dim();
  const std::size_t k = h.output_dim();
  if (x.size() != m) throw DimensionError("jacobian_fd: input dimension mismatch");
  Matrix jac(k, m);
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> cur, next;
  for (std::size_t j = 0; j < m; ++j) {
    const double tau = step * std::max(1.0, std::abs(x[j]));
    xp[j] = x[j] + tau;
    const std::vector<double> plus = forward(h, xp, cur, next);
    xp[j] = x[j] - tau;
    const auto& minus = forward(h, xp, cur, next);
    for (std::size_t i = 0; i < k; ++i) jac(i, j) = (plus[i] - minus[i]) / (2.0 * tau);
    xp[j] = x[j];
  }
  return jac;
}

AndEstimate average_fluctuation(const VectorMap& h, std::span<const double> x, Exponent p,
                                Exponent q, std::size_t n, double eps, Surface probe,
                                const SeededRng& rng) {
  return average_fluctuation_impl<true>(h, x, p, q, n, eps, probe, rng);
}

namespace serial {
AndEstimate average_fluctuation(const VectorMap& h, std::span<const double> x, Exponent p,
                                Exponent q, std::size_t n, double eps, Surface probe,
                                const SeededRng& rng) {
  return average_fluctuation_impl<false>(h, x, p, q, n, eps, probe, rng);
}
}  // namespace serial

FluctuationReport fluctuation_certificate(const VectorMap& h, std::span<const double> x,
                                          Exponent p, Exponent q, std::size_t n,
                                          const SeededRng& rng,
                                          const FluctuationOptions& options) {
  FluctuationReport r;
  r.x.assign(x.begin(), x.end());
  if (r.x.size() != h.input_dim()) {
    throw DimensionError("fluctuation_certificate: input dimension mismatch");
  }

  // Stream reserved for the kink offsets so the probe draws stay untouched.
  SeededRng nudge(rng.seed(), rng.stream() ^ 0x6B696E6BULL);
  for (int attempt = 0; min_relu_margin(h, r.x) < options.kink_margin; ++attempt) {
    if (attempt == 64) throw DomainError("fluctuation_certificate: cannot leave relu kinks");
    for (auto& v : r.x) v += options.kink_offset * nudge.uniform(-1.0, 1.0);
    r.x_shifted = true;
  }

  r.jacobian = jacobian_fd(h, r.x, options.fd_step);
  const Spectrum s = spectrum(r.jacobian);
  if (s.spectral == 0.0) throw DomainError("fluctuation_certificate: Jacobian is zero");
  r.sigma1 = s.spectral;
  r.frobenius = s.frobenius;
  r.rank = s.rank;

  const auto norm = induced_norm(r.jacobian, p, q, options.budget);
  r.delta_max = norm.value;
  r.delta_max_kind = norm.kind;

  const auto avg = average_fluctuation(h, r.x, p, q, n, options.eps_probe, options.probe, rng);
  if (!(avg.mean > 0.0)) throw DomainError("fluctuation_certificate: average fluctuation is zero");
  r.delta_avg = avg.mean;
  r.delta_avg_std_error = avg.std_error;
  r.n = n;
  r.eps = options.eps_probe;
  r.probe = options.probe;
  r.ratio = r.delta_max / r.delta_avg;
  r.ratio_std_error = r.ratio * avg.std_error / avg.mean;

  const auto b = ratio_bounds(s, h.output_dim(), h.input_dim(), p, q);
  r.corrected_bound = b.corrected;
  r.rank_bound = b.rank_relaxed;
  r.dimension_bound = b.dimension;
  return r;
}

}  // namespace specbound
