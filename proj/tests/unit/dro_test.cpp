#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "specbound/dro.hpp"
#include "specbound/error.hpp"
#include "specbound/rng.hpp"

using namespace specbound;

namespace {

std::vector<double> sorted_uniform(std::size_t n, double lo, double hi, SeededRng& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Opt, Examples) {
  const std::vector<double> c{1, 2, 3};
  const auto s = solve_opt(0.0, c, 10.0);
  EXPECT_DOUBLE_EQ(s.minimizer, 2.0);
  EXPECT_DOUBLE_EQ(s.value, 2.0);
  const std::vector<double> z{0, 0};
  const auto t = solve_opt(1.0, z, 0.0);
  EXPECT_DOUBLE_EQ(t.minimizer, 0.0);
  EXPECT_DOUBLE_EQ(t.value, 0.0);
  EXPECT_THROW(solve_opt(3.0, z, 0.0), UnboundedError);
}

TEST(Optbis, Examples) {
  const std::vector<double> d{2, 2};
  const auto s = solve_optbis(d, 1.0);
  EXPECT_DOUBLE_EQ(s.value, 0.5);
  EXPECT_DOUBLE_EQ(s.minimizer, 0.5);
  EXPECT_NEAR(breakpoint_oracle(OptbisInstance{d, 1.0}), 0.5, 1e-6);
  const std::vector<double> zeros{0, 0, 0};
  const auto z = solve_optbis(zeros, 0.3);
  EXPECT_DOUBLE_EQ(z.value, 1.0);
  EXPECT_DOUBLE_EQ(z.minimizer, 0.0);
  const std::vector<double> ones{1, 1};
  EXPECT_DOUBLE_EQ(solve_optbis(ones, 1.0).value, 1.0);
}

TEST(Realopt, Examples) {
  const std::vector<double> a{0, 1};
  const auto s = solve_realopt(a, 1.0, 0.25);
  EXPECT_DOUBLE_EQ(s.value, 0.75);
  EXPECT_DOUBLE_EQ(s.minimizer, 1.0);
  const std::vector<double> r{-2, 0.5, 1};
  EXPECT_NEAR(solve_realopt(r, 3.0, 0.0).value, (-2 + 0.5 + 1) / 3.0, 1e-15);
  const auto big = solve_realopt(r, 3.0, 100.0);
  EXPECT_DOUBLE_EQ(big.value, 3.0);
  EXPECT_DOUBLE_EQ(big.minimizer, 0.0);
}

TEST(Validate, RejectsBadInstances) {
  EXPECT_THROW(validate(OptInstance{0.0, {2, 1}, 3}), std::invalid_argument);
  EXPECT_THROW(validate(OptbisInstance{{-1, 2}, 1}), std::invalid_argument);
  EXPECT_THROW(validate(OptbisInstance{{1, 2}, -1}), std::invalid_argument);
  EXPECT_THROW(validate(RealoptInstance{{1, 5}, 3, 1}), std::invalid_argument);
  EXPECT_THROW(validate(RealoptInstance{{}, 3, 1}), std::invalid_argument);
}

TEST(Solvers, AgreeWithOracleAndAreGlobalMinima) {
  SeededRng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + t % 12;
    PwlInstance inst;
    PwlSolution sol;
    switch (t % 3) {
      case 0: {
        const auto c = sorted_uniform(n, -5, 5, rng);
        const double a = rng.uniform(-double(n), double(n));
        const double b = rng.uniform(-6, 6);
        inst = OptInstance{a, c, b};
        sol = solve_opt(a, c, b);
        break;
      }
      case 1: {
        auto d = sorted_uniform(n, 0, 4, rng);
        if (t % 7 == 0) d[0] = 0.0;
        const double eps = rng.uniform(0, 3);
        inst = OptbisInstance{d, eps};
        sol = solve_optbis(d, eps);
        EXPECT_GE(sol.value, 0.0);
        EXPECT_LE(sol.value, 1.0 + 1e-12);
        break;
      }
      default: {
        const auto a = sorted_uniform(n, -5, 5, rng);
        const double b = a.back() + rng.uniform(0, 3);
        const double eps = rng.uniform(0, 2);
        inst = RealoptInstance{a, b, eps};
        const auto r = solve_realopt(a, b, eps);
        EXPECT_TRUE(r.delta_in_range);
        sol = r;
        break;
      }
    }
    EXPECT_NEAR(sol.value, objective(inst, sol.minimizer), 1e-12 * std::max(1.0, std::abs(sol.value)));
    EXPECT_NEAR(sol.value, breakpoint_oracle(inst), 1e-6);
    for (int i = 0; i < 50; ++i) {
      const double x = rng.uniform(-20, 20);
      EXPECT_LE(sol.value, objective(inst, x) + 1e-12);
    }
  }
}

TEST(Solvers, NondecreasingInEps) {
  SeededRng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto d = sorted_uniform(1 + t % 10, 0, 3, rng);
    const auto a = sorted_uniform(1 + t % 10, -2, 2, rng);
    double pb = -1e300, pr = -1e300;
    for (double eps = 0.0; eps <= 4.0; eps += 0.2) {
      const double vb = solve_optbis(d, eps).value;
      const double vr = solve_realopt(a, 3.0, eps).value;
      EXPECT_GE(vb, pb - 1e-12);
      EXPECT_GE(vr, pr - 1e-12);
      pb = vb;
      pr = vr;
    }
  }
}

TEST(ClosedForms, MedianCaseMatches) {
  const std::vector<double> c{1, 2, 3};
  const auto s = solve_opt(0.0, c, 10.0);
  ASSERT_TRUE(s.closed_form_value.has_value());
  EXPECT_TRUE(s.agrees);
}

TEST(ClosedForms, RealoptZeroEps) {
  const std::vector<double> a{-1, 0, 2};
  const auto s = solve_realopt(a, 2.0, 0.0);
  ASSERT_TRUE(s.closed_form_value.has_value());
  EXPECT_NEAR(*s.closed_form_value, s.value, 1e-9);
}
