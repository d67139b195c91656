#include "specbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "specbound/error.hpp"
#include "specbound/spectral.hpp"

namespace specbound {

namespace {

constexpr double kPsdTol = 1e-10;

double clamp_half(double v) { return std::clamp(v, 0.0, 0.5); }

void require_finite_nonneg(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite and nonnegative");
  }
}

}  // namespace

MomentFunction MomentFunction::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("power moment function needs p >= 1");
  return {Kind::power, p};
}

MomentFunction MomentFunction::subgaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("subgaussian moment function needs sigma > 0");
  return {Kind::subgaussian, sigma};
}

double MomentFunction::operator()(double r) const {
  if (r <= 0.0) return 0.0;
  if (kind_ == Kind::power) return std::pow(r, param_);
  return std::expm1(r * r / (param_ * param_));
}

double MomentFunction::inverse(double y) const {
  if (!(y >= 0.0) || !std::isfinite(y)) throw DomainError("moment function inverse needs y >= 0");
  if (kind_ == Kind::power) return std::pow(y, 1.0 / param_);
  return param_ * std::sqrt(std::log1p(y));
}

std::string MomentFunction::describe() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, kind_ == Kind::power ? "power(%.17g)" : "subgaussian(%.17g)",
                param_);
  return buf;
}

double gaussian_tv(double delta_norm) {
  if (!(delta_norm >= 0.0)) throw DomainError("gaussian_tv: distance must be nonnegative");
  if (std::isinf(delta_norm)) return 1.0;
  return 2.0 * std_normal_cdf(0.5 * delta_norm) - 1.0;
}

Deflation linf_deflation(const GaussianPair& pair, double eps) {
  require_finite_nonneg(eps, "linf_deflation: eps");
  const auto& a = pair.delta;
  const std::size_t m = a.size();
  if (m == 0) throw DimensionError("linf_deflation: empty mean difference");

  Deflation out;
  std::vector<double> excess(m);
  out.z_opt.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    excess[j] = std::max(0.0, std::abs(a[j]) - eps);
    const double sgn = a[j] > 0.0 ? 1.0 : (a[j] < 0.0 ? -1.0 : 0.0);
    out.z_opt[j] = a[j] - sgn * excess[j];
  }

  if (const auto* diag = std::get_if<std::vector<double>>(&pair.sigma)) {
    if (diag->size() != m) throw DimensionError("linf_deflation: variance vector length mismatch");
    out.s_vector.resize(m);
    double ss = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double v = (*diag)[j];
      if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("linf_deflation: variances must be nonnegative");
      if (excess[j] == 0.0) {
        out.s_vector[j] = 0.0;
      } else {
        out.s_vector[j] = v > 0.0 ? excess[j] / std::sqrt(v) : std::numeric_limits<double>::infinity();
      }
      ss += out.s_vector[j] * out.s_vector[j];
    }
    out.delta_eps = std::sqrt(ss);
    out.lower = out.upper = out.delta_eps;
    return out;
  }

  const Matrix& s = std::get<Matrix>(pair.sigma);
  if (s.rows() != m || s.cols() != m) throw DimensionError("linf_deflation: covariance shape mismatch");
  const auto eig = symmetric_eigen(s);
  const double lmax = eig.values.front();
  const double lmin = eig.values.back();
  if (lmin < -kPsdTol * std::max(1.0, lmax)) throw DomainError("linf_deflation: covariance is not PSD");
  if (!(lmin > kPsdTol * std::max(1.0, lmax))) {
    throw DomainError("linf_deflation: full covariance must be positive definite");
  }
  double e2 = 0.0;
  for (double e : excess) e2 += e * e;
  out.lower = std::sqrt(e2 / lmax);
  // (a - z*)^T S^{-1} (a - z*) through the eigenbasis.
  std::vector<double> r(m);
  for (std::size_t j = 0; j < m; ++j) r[j] = a[j] - out.z_opt[j];
  double q = 0.0;
  for (std::size_t c = 0; c < m; ++c) {
    double proj = 0.0;
    for (std::size_t j = 0; j < m; ++j) proj += eig.vectors(j, c) * r[j];
    q += proj * proj / eig.values[c];
  }
  out.upper = std::sqrt(q);
  out.delta_eps = out.upper;
  out.exact = false;
  return out;
}

double gaussian_err_bound(const GaussianPair& pair, double eps) {
  const double d = linf_deflation(pair, eps).delta_eps;
  if (std::isinf(d)) return 0.0;
  return clamp_half(std_normal_cdf(-0.5 * d));
}

TailFunction gaussian_linf_tail(std::size_t m, double sigma) {
  if (m == 0) throw DimensionError("gaussian_linf_tail: m must be positive");
  if (!(sigma > 0.0)) throw DomainError("gaussian_linf_tail: sigma must be positive");
  const double md = static_cast<double>(m);
  return [md, sigma](double t) { return 2.0 * md * std::exp(-t * t / (2.0 * sigma * sigma)); };
}

namespace {

struct TailBound {
  double eps;
  double mu;

  double operator()(const LightTail& k) const {
    if (eps < mu) throw DomainError("light-tail bound needs eps >= mu_dist");
    if (!k.tail) throw std::invalid_argument("light-tail bound: missing tail function");
    return clamp_half(0.5 - k.tail(0.5 * (eps - mu)));
  }
  double operator()(const MomentTail& k) const {
    require_finite_nonneg(k.alpha, "moment bound: alpha");
    const double e = 0.5 * (eps - mu);
    double ratio = 1.0;
    if (e > 0.0) {
      const double me = k.M(e);
      if (me > k.alpha) ratio = k.alpha / me;
    }
    return clamp_half(0.5 * (1.0 - ratio));
  }
  double operator()(const WassersteinTail& k) const {
    require_finite_nonneg(k.W, "Wasserstein bound: W");
    if (!(k.p >= 1.0)) throw DomainError("Wasserstein bound: p must be >= 1");
    if (!(eps > 0.0)) return 0.0;
    return clamp_half(0.5 * (1.0 - std::pow(k.W / eps, k.p)));
  }
};

void check_t(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("t must lie in (0, 1]");
}

}  // namespace

double tail_moment_bound(const TailKind& kind, double eps, double mu_dist) {
  require_finite_nonneg(eps, "tail bound: eps");
  require_finite_nonneg(mu_dist, "tail bound: mu_dist");
  return std::visit(TailBound{eps, mu_dist}, kind);
}

double kingkong_bound(double t, const MomentFunction& M, double alpha, double delta_means,
                      const Grid1D& theta) {
  check_t(t);
  if (!(alpha > 0.0)) throw DomainError("kingkong_bound: alpha must be positive");
  require_finite_nonneg(delta_means, "kingkong_bound: delta_means");
  std::vector<double> running(theta.ys().begin(), theta.ys().end());
  for (double y : running)
    if (y < 0.0 || y > 1.0) throw DomainError("kingkong_bound: theta must take values in [0, 1]");
  for (std::size_t i = 1; i < running.size(); ++i) running[i] = std::max(running[i], running[i - 1]);
  const Grid1D rmax({theta.xs().begin(), theta.xs().end()}, std::move(running));
  const auto env = concave_envelope(rmax, true);
  const double r = 2.0 * M.inverse(alpha / t) + delta_means;
  return clamp_half(0.5 * (1.0 - t * env(r)));
}

double uap_bound(double t, const MomentFunction& M, double alpha, double c) {
  check_t(t);
  if (!(c > 0.0)) throw DomainError("uap_bound: c must be positive");
  if (!(alpha > 0.0)) throw DomainError("uap_bound: alpha must be positive");
  const double tv = std::isinf(c) ? 0.0 : 2.0 * std_normal_cdf(M.inverse(alpha / t) / c) - 1.0;
  return clamp_half(0.5 * (1.0 - t * tv));
}

NoiseDesign noise_design(const Matrix& sigma0, std::size_t r, double sigma0_sq, double t,
                         double delta) {
  const std::size_t m = sigma0.rows();
  if (m == 0 || sigma0.cols() != m) throw DimensionError("noise_design: need a square matrix");
  if (r < 1 || r > m) throw DomainError("noise_design: rank budget must lie in [1, m]");
  if (!(sigma0_sq > 0.0)) throw DomainError("noise_design: sigma0_sq must be positive");
  check_t(t);
  require_finite_nonneg(delta, "noise_design: delta");

  const auto eig = symmetric_eigen(sigma0);
  const double lmax = std::max(0.0, eig.values.front());
  if (eig.values.back() < -kPsdTol * std::max(1.0, lmax)) {
    throw DomainError("noise_design: input is not PSD");
  }
  std::vector<double> sj(r);
  double total = 0.0;
  for (std::size_t j = 0; j < r; ++j) {
    const double v = eig.values[j];
    sj[j] = v > kPsdTol * std::max(1.0, lmax) ? std::sqrt(v) : 0.0;
    total += sj[j];
  }
  if (total == 0.0) throw DomainError("noise_design: input matrix is zero");

  const double md = static_cast<double>(m);
  const double scale = md * sigma0_sq / total;
  NoiseDesign out;
  out.sigma_tilde = Matrix(m, m);
  for (std::size_t j = 0; j < r; ++j) {
    if (sj[j] == 0.0) continue;
    ++out.rank;
    const double w = scale * sj[j];
    for (std::size_t a = 0; a < m; ++a) {
      const double ua = w * eig.vectors(a, j);
      for (std::size_t b = 0; b < m; ++b) out.sigma_tilde(a, b) += ua * eig.vectors(b, j);
    }
  }
  out.alpha_star = total * total / (md * sigma0_sq);
  out.sigma = total / std::sqrt(md);
  const double arg = (out.sigma / std::sqrt(t) + delta / std::sqrt(md)) / std::sqrt(sigma0_sq);
  out.err_lower_bound = clamp_half(0.5 * (1.0 - t * (2.0 * std_normal_cdf(arg) - 1.0)));
  return out;
}

double contraction_constant(std::size_t m, Exponent p, double diam, double eps) {
  if (m == 0) throw DimensionError("contraction_constant: m must be positive");
  require_finite_nonneg(diam, "contraction_constant: diam");
  if (!(eps > 0.0)) throw DomainError("contraction_constant: eps must be positive");
  const double ratio = diam / (2.0 * eps);
  if (p.is_two()) {
    const double x = std::min(ratio, 1.0);
    return std::clamp(reg_inc_beta(x * x, 0.5, (static_cast<double>(m) + 1.0) / 2.0), 0.0, 1.0);
  }
  if (p.is_infinite()) {
    return std::clamp(1.0 - std::pow(std::max(0.0, 1.0 - ratio), static_cast<double>(m)), 0.0, 1.0);
  }
  throw UnsupportedError("contraction_constant: only p = 2 and p = inf are supported");
}

}  // namespace specbound
