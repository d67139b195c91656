#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "specbound/error.hpp"
#include "specbound/lp_geometry.hpp"
#include "specbound/spectral.hpp"

using namespace specbound;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const std::vector<double> kExps{1.0, 1.5, 2.0, 3.0, kInf};
}  // namespace

TEST(Spectrum, Diagonal) {
  const std::vector<double> d{3.0, 1.0};
  const auto s = spectrum(Matrix::diagonal(d));
  ASSERT_EQ(s.singular_values.size(), 2u);
  EXPECT_NEAR(s.singular_values[0], 3.0, 1e-14);
  EXPECT_NEAR(s.singular_values[1], 1.0, 1e-14);
  EXPECT_NEAR(s.frobenius, std::sqrt(10.0), 1e-14);
  EXPECT_EQ(s.rank, 2u);
}

TEST(Spectrum, ZeroMatrix) {
  const auto s = spectrum(Matrix(3, 4));
  EXPECT_EQ(s.rank, 0u);
  EXPECT_EQ(s.spectral, 0.0);
  for (double v : s.singular_values) EXPECT_EQ(v, 0.0);
}

TEST(Spectrum, RejectsNonFinite) {
  Matrix a(2, 2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(spectrum(a), DomainError);
}

TEST(Spectrum, RankOneOuterProduct) {
  SeededRng rng(7);
  for (int t = 0; t < 20; ++t) {
    const std::size_t k = 2 + t % 9, m = 3 + t % 5;
    std::vector<double> u(k), v(m);
    for (auto& x : u) x = rng.normal();
    for (auto& x : v) x = rng.normal();
    Matrix a(k, m);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < m; ++j) a(i, j) = u[i] * v[j];
    const auto s = spectrum(a);
    EXPECT_NEAR(s.spectral, lp_norm(u, 2.0) * lp_norm(v, 2.0), 1e-10 * s.spectral);
    EXPECT_EQ(s.rank, 1u);
  }
}

TEST(Spectrum, MatchesEigenSvd) {
  SeededRng rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 1 + t % 13, m = 1 + (t * 7) % 11;
    const Matrix a = oracle::gaussian_matrix(k, m, rng);
    const auto s = spectrum(a);
    const auto ref = oracle::singular_values(a);
    ASSERT_EQ(s.singular_values.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i)
      EXPECT_NEAR(s.singular_values[i], ref[i], 1e-10 * ref[0]);
    double sq = 0;
    for (double v : s.singular_values) sq += v * v;
    EXPECT_NEAR(s.frobenius * s.frobenius, sq, 1e-9 * sq);
    EXPECT_EQ(s.spectral, s.singular_values[0]);
    EXPECT_LE(s.spectral, s.frobenius * (1 + 1e-12));
    EXPECT_LE(s.frobenius, s.spectral * std::sqrt(double(s.rank)) * (1 + 1e-12));
  }
}

TEST(Spectrum, LowRankProducts) {
  SeededRng rng(13);
  for (std::size_t r = 1; r <= 5; ++r) {
    const Matrix a = oracle::gaussian_matrix(9, r, rng) * oracle::gaussian_matrix(r, 8, rng);
    EXPECT_EQ(spectrum(a).rank, r);
  }
}

TEST(SymmetricEigen, ReconstructsAndMatchesEigen) {
  SeededRng rng(14);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = 1 + t % 12;
    const Matrix s = oracle::random_psd(m, m, rng);
    const auto e = symmetric_eigen(s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(oracle::to_eigen(s));
    for (std::size_t i = 0; i < m; ++i) {
      EXPECT_NEAR(e.values[i], ref.eigenvalues()[m - 1 - i], 1e-10 * std::abs(ref.eigenvalues()[m - 1]));
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        double v = 0;
        for (std::size_t l = 0; l < m; ++l) v += e.vectors(i, l) * e.values[l] * e.vectors(j, l);
        EXPECT_NEAR(v, s(i, j), 1e-10 * e.values[0]);
      }
  }
}

TEST(InducedNorm, Examples) {
  const Matrix a{{1, 2}, {3, 4}};
  const auto r11 = induced_norm(a, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(r11.value, 6.0);
  EXPECT_EQ(r11.kind, NormKind::exact);
  EXPECT_DOUBLE_EQ(induced_norm(a, kInf, kInf).value, 7.0);
  const auto r = induced_norm(Matrix::identity(2), kInf, 1.0);
  EXPECT_DOUBLE_EQ(r.value, 2.0);
  EXPECT_EQ(r.kind, NormKind::brute);
}

TEST(InducedNorm, WitnessIsConsistent) {
  SeededRng rng(15);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = oracle::gaussian_matrix(3 + t % 4, 2 + t % 6, rng);
    for (double p : kExps)
      for (double q : kExps) {
        const auto r = induced_norm(a, p, q, {.restarts = 4, .iterations = 200});
        EXPECT_NEAR(lp_norm(r.witness, p), 1.0, 1e-10);
        EXPECT_NEAR(lp_norm(a.apply(r.witness), q), r.value, 1e-8 * std::max(1.0, r.value));
      }
  }
}

// Brute force over a dense set of directions: every draw lower-bounds the norm.
TEST(InducedNorm, ExactDominatesSampledDirections) {
  SeededRng rng(16);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = oracle::gaussian_matrix(3, 4, rng);
    for (double p : kExps)
      for (double q : kExps) {
        const auto r = induced_norm(a, p, q);
        if (r.kind == NormKind::lower_bound) continue;
        const Matrix u = sample_lp(LpSpace(4, p), Surface::sphere, 2000, rng.split(t));
        for (std::size_t i = 0; i < 2000; ++i)
          EXPECT_LE(lp_norm(a.apply(u.row(i)), q), r.value * (1 + 1e-12) + 1e-12);
      }
  }
}

TEST(InducedNorm, AscentMatchesSpectralForTwoTwo) {
  SeededRng rng(17);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = oracle::gaussian_matrix(5, 7, rng);
    const double s1 = spectrum(a).spectral;
    EXPECT_NEAR(induced_norm_ascent(a, 2.0, 2.0).value, s1, 1e-6 * s1);
  }
}

TEST(InducedNorm, AscentNeverExceedsExact) {
  SeededRng rng(18);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = oracle::gaussian_matrix(4, 6, rng);
    for (double p : kExps)
      for (double q : kExps) {
        const auto exact = induced_norm(a, p, q);
        if (exact.kind == NormKind::lower_bound) continue;
        const auto asc = induced_norm_ascent(a, p, q, {.restarts = 5, .iterations = 300});
        EXPECT_LE(asc.value, exact.value * (1 + 1e-10));
      }
  }
}

TEST(InducedNorm, AscentParallelMatchesSerial) {
  SeededRng rng(19);
  const Matrix a = oracle::gaussian_matrix(6, 9, rng);
  for (double p : kExps)
    for (double q : kExps) {
      const InducedNormBudget b{.restarts = 7, .iterations = 100, .seed = 5};
      const auto par = induced_norm_ascent(a, p, q, b);
      const auto ser = serial::induced_norm_ascent(a, p, q, b);
      EXPECT_EQ(par.value, ser.value);
      EXPECT_EQ(par.witness, ser.witness);
    }
}

TEST(InducedNorm, CorrectedSpectralLowerBound) {
  SeededRng rng(20);
  for (int t = 0; t < 40; ++t) {
    const std::size_t k = 1 + t % 6, m = 1 + t % 7;
    const Matrix a = oracle::gaussian_matrix(k, m, rng);
    const double s1 = spectrum(a).spectral;
    for (double p : kExps)
      for (double q : kExps) {
        const auto r = induced_norm(a, p, q);
        if (r.kind == NormKind::lower_bound) continue;
        const double lower = std::pow(double(k), -theta_exponent(2.0, q)) *
                             std::pow(double(m), -theta_exponent(p, 2.0)) * s1;
        EXPECT_GE(r.value, lower * (1 - 1e-12));
      }
    EXPECT_GE(induced_norm(a, 1.0, 1.0).value, s1 / std::sqrt(double(m)) * (1 - 1e-12));
  }
}

TEST(InducedNorm, IdentityCounterexampleToPrintedExponent) {
  // ||I||_{inf,inf} = 1 while a k^{+1/2} factor would demand sqrt(k).
  const auto r = induced_norm(Matrix::identity(4), kInf, kInf);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_LT(r.value, std::sqrt(4.0) * spectrum(Matrix::identity(4)).spectral);
}
