#pragma once

#include <cstddef>
#include <span>

#include "specbound/exponent.hpp"
#include "specbound/matrix.hpp"
#include "specbound/rng.hpp"

namespace specbound {

/// (R^m, l_p).
struct LpSpace {
  std::size_t dim;
  Exponent p;

  LpSpace(std::size_t m, Exponent exponent);
};

enum class Surface { sphere, ball };

// (1/p - 1/q)_+ with 1/inf = 0.
double theta_exponent(Exponent p, Exponent q);

// Throws std::invalid_argument on an empty vector.
double lp_norm(std::span<const double> x, Exponent p);

struct NormEquivBounds {
  double lower;    // d^{-theta_{p,q}} ||x||_p
  double value_q;  // ||x||_q
  double upper;    // d^{theta_{q,p}} ||x||_p
};

/// Dimension-dependent sandwich of ||x||_q between multiples of ||x||_p.
/// Throws std::logic_error if the computed ||x||_q escapes the sandwich
/// beyond round-off.
NormEquivBounds norm_equiv_bounds(std::span<const double> x, Exponent p, Exponent q);

// Writes one uniform draw from the l_p unit sphere (or ball) of R^{out.size()}.
void sample_lp_point(Exponent p, Surface surface, SeededRng& rng, std::span<double> out);

/// n i.i.d. uniform points on the l_p sphere or ball, one per row.
///
/// Finite p uses the generalized-normal construction: coordinates
/// sign * G^{1/p} with G ~ Gamma(1/p), normalized by their l_p norm. Ball
/// points are sphere points scaled by U^{1/m}. For p = inf the sphere draw
/// picks a face uniformly. Rows are drawn in fixed blocks from independent
/// substreams, so the output does not depend on the thread count.
Matrix sample_lp(const LpSpace& space, Surface surface, std::size_t n, const SeededRng& rng);

struct SphereVariance {
  double exact;       // per-coordinate variance of the uniform sphere law
  double asymptotic;  // large-m form p^{2/p} Gamma(3/p)/Gamma(1/p) m^{-2/p}
  double bound;       // case-split upper bound (2 m^{-2/p}, m^{-2/p}, 1/3)
};

SphereVariance sigma2(const LpSpace& space);

}  // namespace specbound
