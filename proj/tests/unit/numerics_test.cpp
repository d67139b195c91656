#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "specbound/error.hpp"
#include "specbound/numerics.hpp"
#include "specbound/rng.hpp"

using namespace specbound;

TEST(LogGamma, KnownValues) {
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-14);
  EXPECT_NEAR(log_gamma(5.0), std::log(24.0), 1e-13);
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-13);
}

TEST(LogGamma, RejectsNonPositive) {
  EXPECT_THROW(log_gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-1.5), DomainError);
}

TEST(LogGamma, MatchesBoostAndRecurrence) {
  SeededRng rng(11);
  for (int i = 0; i < 500; ++i) {
    const double a = rng.uniform(0.5, 100.0);
    EXPECT_NEAR(log_gamma(a), boost::math::lgamma(a), 1e-11 * std::max(1.0, std::abs(log_gamma(a))));
    EXPECT_NEAR(log_gamma(a + 1.0), log_gamma(a) + std::log(a), 1e-10);
  }
}

TEST(NormalCdf, KnownValuesAndBoost) {
  EXPECT_DOUBLE_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_cdf(1.0), 0.8413447460685429, 1e-15);
  boost::math::normal_distribution<double> n01;
  for (double x = -12.0; x <= 12.0; x += 0.37) {
    EXPECT_NEAR(std_normal_cdf(x), boost::math::cdf(n01, x), 1e-15);
  }
}

TEST(IncBeta, UniformAndArcsine) {
  for (double x : {0.0, 0.3, 1.0}) EXPECT_NEAR(reg_inc_beta(x, 1.0, 1.0), x, 1e-14);
  EXPECT_NEAR(reg_inc_beta(0.5, 0.5, 0.5), 0.5, 1e-12);
  for (double x : {0.1, 0.25, 0.9}) {
    EXPECT_NEAR(reg_inc_beta(x, 0.5, 0.5), 2.0 / std::numbers::pi * std::asin(std::sqrt(x)), 1e-11);
  }
}

TEST(IncBeta, RejectsBadArguments) {
  EXPECT_THROW(reg_inc_beta(-0.1, 1, 1), DomainError);
  EXPECT_THROW(reg_inc_beta(1.1, 1, 1), DomainError);
  EXPECT_THROW(reg_inc_beta(0.5, 0, 1), DomainError);
  EXPECT_THROW(reg_inc_beta(0.5, 1, -2), DomainError);
}

TEST(IncBeta, ReflectionAndBoost) {
  SeededRng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform01();
    const double a = rng.uniform(0.05, 60.0);
    const double b = rng.uniform(0.05, 60.0);
    EXPECT_NEAR(reg_inc_beta(x, a, b) + reg_inc_beta(1 - x, b, a), 1.0, 1e-10);
    EXPECT_NEAR(reg_inc_beta(x, a, b), boost::math::ibeta(a, b, x), 1e-10)
        << "x=" << x << " a=" << a << " b=" << b;
  }
}

TEST(IncBeta, MonotoneInX) {
  SeededRng rng(5);
  for (int t = 0; t < 50; ++t) {
    const double a = rng.uniform(0.1, 20.0), b = rng.uniform(0.1, 20.0);
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double v = reg_inc_beta(i / 200.0, a, b);
      EXPECT_GE(v, prev - 1e-12);
      prev = v;
    }
  }
}

TEST(Grid1D, Validation) {
  EXPECT_THROW(Grid1D({0.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(Grid1D({0.0, 1.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(Grid1D({0.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(Grid1D({1.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(Grid1D({0.0, 1.0}, {NAN, 2.0}), std::invalid_argument);
}

TEST(ConcaveEnvelope, Examples) {
  EXPECT_NEAR(concave_envelope(Grid1D({0, 1, 2}, {0, 1, 2}))(0.5), 0.5, 1e-15);
  const auto e2 = concave_envelope(Grid1D({0, 1, 2}, {0, 1, 1.2}));
  EXPECT_NEAR(e2(0.5), 0.5, 1e-15);
  EXPECT_EQ(e2.hull_xs().size(), 3u);
  const auto e3 = concave_envelope(Grid1D({0, 1, 2}, {0, 0.1, 2}));
  EXPECT_NEAR(e3(1.0), 1.0, 1e-15);
  EXPECT_EQ(e3.hull_xs().size(), 2u);
}

TEST(ConcaveEnvelope, ClampsOutsideAndToOne) {
  const auto e = concave_envelope(Grid1D({0, 1}, {0.2, 3.0}), true);
  EXPECT_DOUBLE_EQ(e(-5.0), 0.2);
  EXPECT_DOUBLE_EQ(e(5.0), 1.0);
  EXPECT_DOUBLE_EQ(e(0.9), 1.0);
}

TEST(ConcaveEnvelope, MajorantAndConcave) {
  SeededRng rng(8);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> xs, ys;
    double x = 0.0;
    for (int i = 0; i < 40; ++i) {
      x += rng.uniform(0.01, 1.0);
      xs.push_back(x);
      ys.push_back(rng.normal());
    }
    const auto env = concave_envelope(Grid1D(xs, ys));
    for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_GE(env(xs[i]), ys[i] - 1e-12);
    for (int i = 0; i < 200; ++i) {
      const double a = rng.uniform(xs.front(), xs.back());
      const double b = rng.uniform(xs.front(), xs.back());
      EXPECT_GE(env(0.5 * (a + b)), 0.5 * (env(a) + env(b)) - 1e-12);
    }
  }
}
