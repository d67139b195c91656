#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "specbound/error.hpp"
#include "specbound/transport.hpp"

using namespace specbound;

namespace {

Matrix line(std::vector<double> xs) {
  const std::size_t n = xs.size();
  return Matrix(n, 1, std::move(xs));
}

EmpiricalSample random_sample(std::size_t n, std::size_t dim, bool weighted, SeededRng& rng) {
  Matrix pts(n, dim);
  for (auto& v : pts.data()) v = std::round(rng.uniform(0.0, 4.0) * 2) / 2;
  if (!weighted) return EmpiricalSample(pts);
  return EmpiricalSample(pts, oracle::random_simplex(n, rng));
}

AttackModel exact_match() {
  return AttackModel::predicate([](std::span<const double> x, std::span<const double> y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != y[i]) return false;
    return true;
  });
}

}  // namespace

TEST(EmpiricalSample, Validation) {
  EXPECT_THROW(EmpiricalSample(line({0, 1}), {0.5, 0.6}), DomainError);
  EXPECT_THROW(EmpiricalSample(line({0, 1}), {1.5, -0.5}), DomainError);
  EXPECT_THROW(EmpiricalSample(line({0, 1}), {1.0}), DimensionError);
  EXPECT_TRUE(EmpiricalSample(line({0, 1}), {0.5, 0.5}).uniform());
  EXPECT_FALSE(EmpiricalSample(line({0, 1}), {0.25, 0.75}).uniform());
}

TEST(TvEps, Examples) {
  const EmpiricalSample a(line({0, 1})), b(line({0.5, 2}));
  const auto r = tv_eps_matching(a, b, AttackModel::metric(2.0, 0.6));
  EXPECT_EQ(r.matching_size, 1u);
  EXPECT_DOUBLE_EQ(r.value, 0.5);
  EXPECT_DOUBLE_EQ(tv_eps_matching(a, a, exact_match()).value, 0.0);
  EXPECT_DOUBLE_EQ(tv_eps_matching(a, EmpiricalSample(line({100, 200})),
                                   AttackModel::metric(1.0, 1.0)).value,
                   1.0);
  EXPECT_THROW(tv_eps_matching(EmpiricalSample(line({0, 1}), {0.25, 0.75}), b,
                               AttackModel::metric(2.0, 1.0)),
               std::invalid_argument);
}

TEST(OtMaxflow, Examples) {
  const EmpiricalSample a(line({0, 1}), {2.0 / 3, 1.0 / 3});
  const EmpiricalSample b(line({0, 1}), {0.5, 0.5});
  EXPECT_NEAR(ot_maxflow(a, b, AttackModel::metric(2.0, 0.0)).value, 1.0 / 6, 1e-12);
  EXPECT_NEAR(ot_maxflow(a, a, AttackModel::metric(2.0, 0.0)).value, 0.0, 1e-12);
  EXPECT_NEAR(ot_maxflow(a, EmpiricalSample(line({9, 10})), AttackModel::metric(2.0, 0.1)).value,
              1.0, 1e-12);
  EXPECT_NEAR(strassen_enumerate(a, b, AttackModel::metric(2.0, 0.0)), 1.0 / 6, 1e-12);
  EXPECT_NEAR(strassen_enumerate(a, a, AttackModel::metric(2.0, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(strassen_enumerate(a, b, AttackModel::metric(2.0, 1e9)), 0.0, 1e-12);
}

TEST(OtMaxflow, PlanRespectsMarginalsAndEdges) {
  SeededRng rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_sample(1 + t % 7, 2, true, rng);
    const auto b = random_sample(1 + t % 5, 2, true, rng);
    const auto model = AttackModel::metric(Exponent::infinity(), 0.75);
    const auto r = ot_maxflow(a, b, model);
    std::vector<double> out(a.size()), in(b.size());
    double total = 0;
    for (const auto& e : r.plan) {
      EXPECT_TRUE(model.allows(a.point(e.i), b.point(e.j)));
      EXPECT_GT(e.mass, 0.0);
      out[e.i] += e.mass;
      in[e.j] += e.mass;
      total += e.mass;
    }
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LE(out[i], a.weights()[i] + 1e-12);
    for (std::size_t j = 0; j < b.size(); ++j) EXPECT_LE(in[j], b.weights()[j] + 1e-12);
    EXPECT_NEAR(r.value, 1.0 - total, 1e-12);
  }
}

TEST(Matching, HopcroftKarpIsMaximum) {
  SeededRng rng(2);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n1 = 1 + t % 8, n2 = 1 + (t / 8) % 8;
    std::vector<std::vector<std::size_t>> adj(n1);
    const double density = rng.uniform01();
    for (auto& row : adj)
      for (std::size_t j = 0; j < n2; ++j)
        if (rng.uniform01() < density) row.push_back(j);
    const auto mate = hopcroft_karp(adj, n2);
    std::size_t size = 0;
    std::vector<int> used(n2, 0);
    for (std::size_t i = 0; i < n1; ++i) {
      if (mate[i] == SIZE_MAX) continue;
      ++size;
      EXPECT_EQ(used[mate[i]]++, 0);
      EXPECT_NE(std::find(adj[i].begin(), adj[i].end(), mate[i]), adj[i].end());
    }
    EXPECT_EQ(size, oracle::exhaustive_matching(adj, n2));
    std::size_t greedy = 0;
    for (auto g : greedy_matching(adj, n2)) greedy += g != SIZE_MAX;
    EXPECT_LE(greedy, size);
    EXPECT_GE(2 * greedy, size);
  }
}

TEST(Transport, StrongDuality) {
  SeededRng rng(3);
  for (int t = 0; t < 500; ++t) {
    const auto a = random_sample(1 + t % 10, 1 + t % 3, true, rng);
    const auto b = random_sample(1 + (t / 10) % 10, 1 + t % 3, true, rng);
    const auto model = AttackModel::metric(t % 2 ? 2.0 : 1.0, rng.uniform(0.0, 2.0));
    EXPECT_NEAR(ot_maxflow(a, b, model).value, strassen_enumerate(a, b, model), 1e-9);
  }
}

TEST(Transport, UniformMatchingAgreesWithMaxflow) {
  SeededRng rng(4);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 12;
    const auto a = random_sample(n, 2, false, rng);
    const auto b = random_sample(n, 2, false, rng);
    const auto model = AttackModel::metric(2.0, rng.uniform(0.0, 2.0));
    EXPECT_NEAR(tv_eps_matching(a, b, model).value, ot_maxflow(a, b, model).value, 1e-9);
  }
}

TEST(Transport, ZeroBudgetIsTotalVariation) {
  SeededRng rng(5);
  for (int t = 0; t < 300; ++t) {
    std::vector<double> x1(1 + t % 9), x2(1 + t % 6);
    for (auto& v : x1) v = std::floor(rng.uniform(0.0, 5.0));
    for (auto& v : x2) v = std::floor(rng.uniform(0.0, 5.0));
    const auto w1 = oracle::random_simplex(x1.size(), rng);
    const auto w2 = oracle::random_simplex(x2.size(), rng);
    const EmpiricalSample a(line(x1), w1), b(line(x2), w2);
    EXPECT_NEAR(ot_maxflow(a, b, exact_match()).value, oracle::discrete_tv(x1, w1, x2, w2), 1e-12);
    EXPECT_NEAR(ot_maxflow(a, b, AttackModel::metric(2.0, 0.0)).value,
                oracle::discrete_tv(x1, w1, x2, w2), 1e-12);
  }
}

TEST(Transport, NonincreasingInEps) {
  SeededRng rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_sample(6, 2, true, rng);
    const auto b = random_sample(7, 2, true, rng);
    double prev = 2.0;
    for (double eps = 0.0; eps <= 5.0; eps += 0.25) {
      const double v = ot_maxflow(a, b, AttackModel::metric(1.5, eps)).value;
      EXPECT_LE(v, prev + 1e-12);
      prev = v;
    }
  }
}

TEST(Strassen, RejectsLargeSupport) {
  SeededRng rng(7);
  const auto a = random_sample(21, 1, false, rng);
  EXPECT_THROW(strassen_enumerate(a, a, AttackModel::metric(2.0, 0.1)), UnsupportedError);
}
