#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "specbound/exponent.hpp"
#include "specbound/matrix.hpp"
#include "specbound/rng.hpp"
#include "specbound/spectral.hpp"

namespace specbound {

/// Monte Carlo estimate of the average norm distortion E_u ||A u||_q,
/// u uniform on the l_p unit sphere of R^m.
struct AndEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::size_t n = 0;
  Exponent p = 2.0;
  Exponent q = 2.0;
  std::uint64_t seed = 0;
};

enum class Verdict { holds, holds_within_noise, violated, inconclusive };
std::string to_string(Verdict v);

// Monte Carlo noise margin, in standard errors.
inline constexpr double kNoiseSigmas = 4.0;
// Relative slack absorbing floating-point round-off when an inequality is tight.
inline constexpr double kRoundoff = 1e-12;

// Verdict for a claim "estimate <= bound".
Verdict classify_upper(double estimate, double std_error, double bound);
// Verdict for a claim "estimate >= bound".
Verdict classify_lower(double estimate, double std_error, double bound);

struct BoundCertificate {
  double estimate = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  double constant = 0.0;
  // (bound - estimate) / std_error; +-inf when std_error is zero.
  double slack_sigmas = 0.0;
  Verdict verdict = Verdict::holds;
};

// n >= 2.
AndEstimate and_estimate(const Matrix& a, Exponent p, Exponent q, std::size_t n,
                         const SeededRng& rng);

// One set of sphere draws shared across several codomain exponents.
std::vector<AndEstimate> and_estimate_multi(const Matrix& a, Exponent p,
                                            std::span<const Exponent> qs, std::size_t n,
                                            const SeededRng& rng);

namespace serial {
AndEstimate and_estimate(const Matrix& a, Exponent p, Exponent q, std::size_t n,
                         const SeededRng& rng);
}

// Dimension factor of the spectral ratio bounds:
// (1/sqrt 2) m^{1/2} for 1 <= p < 2, m^{1/p} for 2 <= p < inf, sqrt 3 for p = inf.
double ratio_dimension_factor(std::size_t m, Exponent p);

/// alpha_{m,k,p,q} = k^{-theta_{q,2}} * ((1/sqrt 2) m^{1/p} | m^{1/p} | sqrt 3),
/// the constant with alpha * E||Au||_q <= ||A||_F.
double spectum_constant(std::size_t m, std::size_t k, Exponent p, Exponent q);

BoundCertificate spectum_certificate(const Matrix& a, Exponent p, Exponent q, std::size_t n,
                                     const SeededRng& rng);
BoundCertificate spectum_certificate(const Matrix& a, const AndEstimate& estimate);

/// Euclidean warm-up E||Au||_2 <= m^{-1/2} ||A||_F for u on the l_2 sphere.
BoundCertificate euclidean_and_certificate(const Matrix& a, const AndEstimate& estimate);

/// Lower bounds on ||A||_{p,q} / Delta_{p,q}(A).
struct RatioBounds {
  double corrected = 0.0;     // (s1/||A||_F) k^{-|1/2-1/q|} c_p(m)
  double uncorrected = 0.0;   // same with the exponent k^{1/2-1/q}
  double rank_relaxed = 0.0;  // s1/||A||_F replaced by 1/sqrt(rank)
  double dimension = 0.0;     // rank replaced by min(m, k)
};
RatioBounds ratio_bounds(const Spectrum& s, std::size_t k, std::size_t m, Exponent p, Exponent q);

struct RatioCertificate {
  double numerator = 0.0;
  NormKind numerator_kind = NormKind::exact;
  bool numerator_lower_bound = false;
  double and_mean = 0.0;
  double and_std_error = 0.0;
  double ratio_estimate = 0.0;
  double ratio_std_error = 0.0;  // delta method on the denominator
  RatioBounds bounds;
  Verdict corrected_verdict = Verdict::holds;
  Verdict uncorrected_verdict = Verdict::holds;
  Verdict rank_relaxed_verdict = Verdict::holds;
  std::size_t rank = 0;
  double spectral = 0.0;
  double frobenius = 0.0;
};

// Throws DomainError for the zero matrix.
RatioCertificate ratio_certificate(const Matrix& a, Exponent p, Exponent q, std::size_t n,
                                   const SeededRng& rng, const InducedNormBudget& budget = {});
RatioCertificate ratio_certificate(const Matrix& a, const InducedNormResult& norm,
                                   const AndEstimate& estimate);

}  // namespace specbound
