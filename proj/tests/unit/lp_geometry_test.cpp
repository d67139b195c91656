#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "specbound/error.hpp"
#include "specbound/lp_geometry.hpp"
#include "specbound/numerics.hpp"

using namespace specbound;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST(Exponent, ParseAndConjugate) {
  EXPECT_TRUE(Exponent::parse("inf").is_infinite());
  EXPECT_DOUBLE_EQ(Exponent::parse("1.5").value(), 1.5);
  EXPECT_THROW(Exponent(0.5), DomainError);
  EXPECT_TRUE(Exponent(1.0).conjugate().is_infinite());
  EXPECT_TRUE(Exponent::infinity().conjugate().is_one());
  EXPECT_DOUBLE_EQ(Exponent(3.0).conjugate().value(), 1.5);
  EXPECT_EQ(Exponent::infinity().to_string(), "inf");
}

TEST(Theta, Examples) {
  EXPECT_DOUBLE_EQ(theta_exponent(1.0, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(theta_exponent(2.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(theta_exponent(1.0, kInf), 1.0);
  EXPECT_THROW(theta_exponent(0.5, 2.0), DomainError);
}

TEST(Theta, OneSideIsZero) {
  SeededRng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Exponent p = i % 7 == 0 ? Exponent::infinity() : Exponent(rng.uniform(1.0, 10.0));
    const Exponent q = i % 5 == 0 ? Exponent::infinity() : Exponent(rng.uniform(1.0, 10.0));
    EXPECT_EQ(std::min(theta_exponent(p, q), theta_exponent(q, p)), 0.0);
  }
}

TEST(LpNorm, Examples) {
  const std::vector<double> x{3, 4};
  EXPECT_DOUBLE_EQ(lp_norm(x, 2.0), 5.0);
  EXPECT_DOUBLE_EQ(lp_norm(x, Exponent::infinity()), 4.0);
  EXPECT_DOUBLE_EQ(lp_norm(x, 1.0), 7.0);
  EXPECT_THROW(lp_norm(std::vector<double>{}, 2.0), std::invalid_argument);
}

TEST(NormEquiv, Examples) {
  const std::vector<double> ones{1, 1, 1, 1};
  const auto b = norm_equiv_bounds(ones, 1.0, 2.0);
  EXPECT_NEAR(b.lower, 2.0, 1e-15);
  EXPECT_NEAR(b.value_q, 2.0, 1e-15);
  const std::vector<double> e1{1, 0, 0};
  const auto c = norm_equiv_bounds(e1, 2.0, 1.0);
  EXPECT_DOUBLE_EQ(c.lower, 1.0);
  EXPECT_DOUBLE_EQ(c.value_q, 1.0);
  const auto d = norm_equiv_bounds(ones, 3.0, 3.0);
  EXPECT_DOUBLE_EQ(d.lower, d.upper);
}

TEST(NormEquiv, SandwichOnRandomVectors) {
  SeededRng rng(2);
  const std::vector<double> ps{1, 1.5, 2, 3, kInf};
  for (int t = 0; t < 300; ++t) {
    std::vector<double> x(1 + t % 17);
    for (auto& v : x) v = rng.normal();
    for (double p : ps)
      for (double q : ps) {
        const auto b = norm_equiv_bounds(x, p, q);
        EXPECT_LE(b.lower, b.value_q * (1 + 1e-12));
        EXPECT_LE(b.value_q, b.upper * (1 + 1e-12));
      }
  }
}

TEST(Sigma2, Examples) {
  EXPECT_NEAR(sigma2(LpSpace(4, 2.0)).exact, 0.25, 1e-14);
  EXPECT_NEAR(sigma2(LpSpace(2, 1.0)).exact, 1.0 / 3.0, 1e-14);
  const auto inf = sigma2(LpSpace(1000, Exponent::infinity()));
  EXPECT_DOUBLE_EQ(inf.asymptotic, 1.0 / 3.0);
  EXPECT_NEAR(inf.exact, 1002.0 / 3000.0, 1e-15);
}

TEST(Sigma2, ClosedFormsAndBound) {
  for (std::size_t m = 1; m <= 200; ++m) {
    EXPECT_NEAR(sigma2(LpSpace(m, 2.0)).exact, 1.0 / m, 1e-12);
    EXPECT_NEAR(sigma2(LpSpace(m, 1.0)).exact, 2.0 / (m * (m + 1.0)), 1e-12);
    for (double p : {1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0}) {
      const auto s = sigma2(LpSpace(m, p));
      EXPECT_GT(s.exact, 0.0);
      EXPECT_LE(s.exact, s.bound + 1e-12) << "m=" << m << " p=" << p;
    }
  }
}

// The face sampler's variance sits above the 1/3 cap and only reaches it as m grows.
TEST(Sigma2, InfinityApproachesCapFromAbove) {
  double prev = kInf;
  for (std::size_t m = 1; m <= 200; ++m) {
    const auto s = sigma2(LpSpace(m, Exponent::infinity()));
    EXPECT_NEAR(s.exact, (m + 2.0) / (3.0 * m), 1e-15);
    EXPECT_GE(s.exact, s.bound);
    EXPECT_LT(s.exact, prev);
    prev = s.exact;
  }
}

class SphereSampling : public ::testing::TestWithParam<double> {};

TEST_P(SphereSampling, OnSphereAndInBall) {
  const Exponent p = GetParam();
  for (std::size_t m : {1u, 2u, 7u, 40u}) {
    const Matrix s = sample_lp(LpSpace(m, p), Surface::sphere, 500, SeededRng(9, m));
    const Matrix b = sample_lp(LpSpace(m, p), Surface::ball, 500, SeededRng(10, m));
    for (std::size_t i = 0; i < 500; ++i) {
      EXPECT_NEAR(lp_norm(s.row(i), p), 1.0, 1e-12);
      EXPECT_LE(lp_norm(b.row(i), p), 1.0 + 1e-12);
    }
  }
}

TEST_P(SphereSampling, CoordinateMomentsMatchSigma2) {
  const Exponent p = GetParam();
  const std::size_t m = 5, n = 100000;
  const Matrix s = sample_lp(LpSpace(m, p), Surface::sphere, n, SeededRng(21));
  const double target = sigma2(LpSpace(m, p)).exact;
  for (std::size_t j = 0; j < m; ++j) {
    double mean = 0, sq = 0, q4 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = s(i, j);
      mean += u;
      sq += u * u;
      q4 += u * u * u * u;
    }
    mean /= n;
    sq /= n;
    q4 /= n;
    EXPECT_LE(std::abs(mean), 4 * std::sqrt(sq / n));
    EXPECT_LE(std::abs(sq - target), 4 * std::sqrt((q4 - sq * sq) / n));
  }
}

INSTANTIATE_TEST_SUITE_P(Exponents, SphereSampling,
                         ::testing::Values(1.0, 1.5, 2.0, 3.0, kInf));

TEST(SampleLp, DeterministicPerSeed) {
  const LpSpace sp(6, 1.5);
  EXPECT_EQ(sample_lp(sp, Surface::sphere, 5000, SeededRng(4, 2)),
            sample_lp(sp, Surface::sphere, 5000, SeededRng(4, 2)));
  EXPECT_NE(sample_lp(sp, Surface::sphere, 100, SeededRng(4, 2)),
            sample_lp(sp, Surface::sphere, 100, SeededRng(4, 3)));
}
