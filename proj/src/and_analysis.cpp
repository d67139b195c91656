#include "specbound/and_analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "specbound/error.hpp"
#include "specbound/kernels.hpp"
#include "specbound/lp_geometry.hpp"

namespace specbound {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::holds_within_noise: return "holds_within_noise";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

Verdict classify_upper(double estimate, double std_error, double bound) {
  if (estimate <= bound + kRoundoff * std::max(1.0, std::abs(bound))) return Verdict::holds;
  if (estimate <= bound + kNoiseSigmas * std_error) return Verdict::holds_within_noise;
  return Verdict::violated;
}

Verdict classify_lower(double estimate, double std_error, double bound) {
  if (estimate >= bound - kRoundoff * std::max(1.0, std::abs(bound))) return Verdict::holds;
  if (estimate >= bound - kNoiseSigmas * std_error) return Verdict::holds_within_noise;
  return Verdict::violated;
}

namespace {

void check_samples(std::size_t n) {
  if (n < 2) throw std::invalid_argument("and_estimate: need at least 2 samples");
}

AndEstimate to_estimate(const kernels::RunningMoments& mom, std::size_t n, Exponent p,
                        Exponent q, const SeededRng& rng) {
  AndEstimate e;
  e.mean = mom.mean;
  e.std_error = mom.standard_error();
  e.n = n;
  e.p = p;
  e.q = q;
  e.seed = rng.seed();
  return e;
}

double slack(double bound, double estimate, double se) {
  if (se > 0.0) return (bound - estimate) / se;
  if (estimate <= bound) return std::numeric_limits<double>::infinity();
  return -std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<AndEstimate> and_estimate_multi(const Matrix& a, Exponent p,
                                            std::span<const Exponent> qs, std::size_t n,
                                            const SeededRng& rng) {
  check_samples(n);
  const auto moments = kernels::image_norm_moments(a, p, qs, n, rng);
  std::vector<AndEstimate> out;
  for (std::size_t i = 0; i < qs.size(); ++i) out.push_back(to_estimate(moments[i], n, p, qs[i], rng));
  return out;
}

AndEstimate and_estimate(const Matrix& a, Exponent p, Exponent q, std::size_t n,
                         const SeededRng& rng) {
  const Exponent qs[] = {q};
  return and_estimate_multi(a, p, qs, n, rng).front();
}

namespace serial {
AndEstimate and_estimate(const Matrix& a, Exponent p, Exponent q, std::size_t n,
                         const SeededRng& rng) {
  check_samples(n);
  const Exponent qs[] = {q};
  const auto moments = kernels::serial::image_norm_moments(a, p, qs, n, rng);
  return to_estimate(moments.front(), n, p, q, rng);
}
}  // namespace serial

double ratio_dimension_factor(std::size_t m, Exponent p) {
  const double md = static_cast<double>(m);
  if (p.is_infinite()) return std::numbers::sqrt3;
  if (p.value() < 2.0) return std::sqrt(md) / std::numbers::sqrt2;
  return std::pow(md, 1.0 / p.value());
}

double spectum_constant(std::size_t m, std::size_t k, Exponent p, Exponent q) {
  const double md = static_cast<double>(m);
  double branch;
  if (p.is_infinite()) {
    branch = std::numbers::sqrt3;
  } else if (p.value() < 2.0) {
    branch = std::pow(md, 1.0 / p.value()) / std::numbers::sqrt2;
  } else {
    branch = std::pow(md, 1.0 / p.value());
  }
  return std::pow(static_cast<double>(k), -theta_exponent(q, 2.0)) * branch;
}

BoundCertificate spectum_certificate(const Matrix& a, const AndEstimate& estimate) {
  BoundCertificate c;
  c.constant = spectum_constant(a.cols(), a.rows(), estimate.p, estimate.q);
  c.bound = a.frobenius_norm() / c.constant;
  c.estimate = estimate.mean;
  c.std_error = estimate.std_error;
  c.slack_sigmas = slack(c.bound, c.estimate, c.std_error);
  c.verdict = classify_upper(c.estimate, c.std_error, c.bound);
  return c;
}

BoundCertificate spectum_certificate(const Matrix& a, Exponent p, Exponent q, std::size_t n,
                                     const SeededRng& rng) {
  return spectum_certificate(a, and_estimate(a, p, q, n, rng));
}

BoundCertificate euclidean_and_certificate(const Matrix& a, const AndEstimate& estimate) {
  if (!estimate.p.is_two() || !estimate.q.is_two()) {
    throw std::invalid_argument("euclidean_and_certificate: estimate must use p = q = 2");
  }
  BoundCertificate c;
  c.constant = std::sqrt(static_cast<double>(a.cols()));
  c.bound = a.frobenius_norm() / c.constant;
  c.estimate = estimate.mean;
  c.std_error = estimate.std_error;
  c.slack_sigmas = slack(c.bound, c.estimate, c.std_error);
  c.verdict = classify_upper(c.estimate, c.std_error, c.bound);
  return c;
}

RatioBounds ratio_bounds(const Spectrum& s, std::size_t k, std::size_t m, Exponent p,
                         Exponent q) {
  RatioBounds b;
  const double kd = static_cast<double>(k);
  const double cp = ratio_dimension_factor(m, p);
  const double half_minus = 0.5 - q.reciprocal();
  const double spread = s.frobenius > 0.0 ? s.spectral / s.frobenius : 0.0;
  const double corrected_k = std::pow(kd, -std::abs(half_minus));
  b.corrected = spread * corrected_k * cp;
  b.uncorrected = spread * std::pow(kd, half_minus) * cp;
  b.rank_relaxed =
      s.rank > 0 ? corrected_k * cp / std::sqrt(static_cast<double>(s.rank)) : 0.0;
  b.dimension = corrected_k * cp / std::sqrt(static_cast<double>(std::min(m, k)));
  return b;
}

RatioCertificate ratio_certificate(const Matrix& a, const InducedNormResult& norm,
                                   const AndEstimate& estimate) {
  const Spectrum s = spectrum(a);
  if (s.spectral == 0.0 || estimate.mean <= 0.0) {
    throw DomainError("ratio_certificate: ratio undefined for the zero matrix");
  }
  RatioCertificate c;
  c.numerator = norm.value;
  c.numerator_kind = norm.kind;
  c.numerator_lower_bound = norm.kind == NormKind::lower_bound;
  c.and_mean = estimate.mean;
  c.and_std_error = estimate.std_error;
  c.ratio_estimate = norm.value / estimate.mean;
  c.ratio_std_error = c.ratio_estimate * estimate.std_error / estimate.mean;
  c.bounds = ratio_bounds(s, a.rows(), a.cols(), estimate.p, estimate.q);
  c.rank = s.rank;
  c.spectral = s.spectral;
  c.frobenius = s.frobenius;

  const auto judge = [&](double bound) {
    Verdict v = classify_lower(c.ratio_estimate, c.ratio_std_error, bound);
    // A numerator that is only a lower bound cannot refute the inequality.
    if (v == Verdict::violated && c.numerator_lower_bound) v = Verdict::inconclusive;
    return v;
  };
  c.corrected_verdict = judge(c.bounds.corrected);
  c.uncorrected_verdict = judge(c.bounds.uncorrected);
  c.rank_relaxed_verdict = judge(c.bounds.rank_relaxed);
  return c;
}

RatioCertificate ratio_certificate(const Matrix& a, Exponent p, Exponent q, std::size_t n,
                                   const SeededRng& rng, const InducedNormBudget& budget) {
  if (a.frobenius_norm() == 0.0) {
    throw DomainError("ratio_certificate: ratio undefined for the zero matrix");
  }
  const auto norm = induced_norm(a, p, q, budget);
  return ratio_certificate(a, norm, and_estimate(a, p, q, n, rng));
}

}  // namespace specbound
