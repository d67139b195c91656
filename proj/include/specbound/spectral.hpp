#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "specbound/exponent.hpp"
#include "specbound/matrix.hpp"

namespace specbound {

struct Spectrum {
  std::vector<double> singular_values;  // nonincreasing, length min(k, m)
  double frobenius = 0.0;
  std::size_t rank = 0;
  double spectral = 0.0;  // == singular_values[0]
};

/// Singular values, Frobenius norm and numerical rank of A.
/// rank = #{sigma_j > sigma_1 * max(k, m) * rank_tol_factor}.
/// Throws DomainError on non-finite entries.
Spectrum spectrum(const Matrix& a, double rank_tol_factor = 1e-12);

/// Singular values together with right singular vectors (columns of
/// right_vectors, m x min(k, m)), from one-sided cyclic Jacobi.
struct SingularSystem {
  std::vector<double> values;
  Matrix right_vectors;
};
SingularSystem singular_system(const Matrix& a);

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// values are sorted nonincreasing; vectors holds the matching eigenvectors as
/// columns.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};
SymmetricEigen symmetric_eigen(const Matrix& s);

enum class NormKind { exact, brute, lower_bound };
std::string to_string(NormKind kind);

struct InducedNormResult {
  double value = 0.0;
  NormKind kind = NormKind::exact;
  std::vector<double> witness;  // ||witness||_p = 1 and ||A witness||_q = value
};

struct InducedNormBudget {
  int restarts = 20;
  int iterations = 500;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  std::size_t brute_force_max_cols = 20;
};

/// ||A||_{p,q} = sup_{||x||_p <= 1} ||A x||_q.
///
/// Closed forms where they exist: p = 1 (largest column q-norm), q = inf
/// (largest row p*-norm), p = q = 2 (sigma_1). For p = inf with at most
/// budget.brute_force_max_cols columns the {+-1}^m vertices are enumerated.
/// Everything else falls back to multi-start ascent, which only certifies a
/// lower bound.
InducedNormResult induced_norm(const Matrix& a, Exponent p, Exponent q,
                               const InducedNormBudget& budget = {});

/// Multi-start ascent of ||A x||_q over the l_p sphere regardless of (p, q).
/// Each step moves to the l_p-sphere maximizer of the linearization
/// <A^T grad||y||_q, x>, which never decreases the objective. The first start is
/// the top right singular vector; the rest are uniform sphere draws.
InducedNormResult induced_norm_ascent(const Matrix& a, Exponent p, Exponent q,
                                      const InducedNormBudget& budget = {});

namespace serial {
InducedNormResult induced_norm_ascent(const Matrix& a, Exponent p, Exponent q,
                                      const InducedNormBudget& budget = {});
}

}  // namespace specbound
