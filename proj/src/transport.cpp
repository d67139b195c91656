#include "specbound/transport.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "specbound/error.hpp"
#include "specbound/kernels.hpp"
#include "specbound/lp_geometry.hpp"

namespace specbound {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kFlowCutoff = 1e-12;

}  // namespace

EmpiricalSample::EmpiricalSample(Matrix points) : points_(std::move(points)) {
  if (points_.rows() == 0) throw DimensionError("EmpiricalSample: no atoms");
  weights_.assign(points_.rows(), 1.0 / static_cast<double>(points_.rows()));
}

EmpiricalSample::EmpiricalSample(Matrix points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)), uniform_(false) {
  if (points_.rows() == 0) throw DimensionError("EmpiricalSample: no atoms");
  if (weights_.size() != points_.rows()) {
    throw DimensionError("EmpiricalSample: " + std::to_string(weights_.size()) +
                         " weights for " + std::to_string(points_.rows()) + " atoms");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("EmpiricalSample: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("EmpiricalSample: weights must sum to 1");
  uniform_ = std::all_of(weights_.begin(), weights_.end(),
                         [&](double w) { return w == weights_.front(); });
}

AttackModel AttackModel::metric(Exponent p, double eps) {
  if (!(eps >= 0.0)) throw DomainError("AttackModel: eps must be nonnegative");
  AttackModel m;
  m.metric_ = true;
  m.p_ = p;
  m.eps_ = eps;
  return m;
}

AttackModel AttackModel::predicate(Predicate pred) {
  if (!pred) throw std::invalid_argument("AttackModel: empty predicate");
  AttackModel m;
  m.metric_ = false;
  m.pred_ = std::move(pred);
  return m;
}

bool AttackModel::allows(std::span<const double> x, std::span<const double> y) const {
  if (!metric_) return pred_(x, y);
  if (x.size() != y.size()) throw DimensionError("AttackModel: point dimensions differ");
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return lp_norm(d, p_) <= eps_;
}

std::vector<std::vector<std::size_t>> attack_graph(const EmpiricalSample& a,
                                                   const EmpiricalSample& b,
                                                   const AttackModel& model) {
  if (a.dim() != b.dim()) throw DimensionError("attack_graph: samples live in different spaces");
  std::vector<std::vector<std::size_t>> adj(a.size());
  const auto n1 = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) num_threads(kernels::configured_threads())
  for (std::ptrdiff_t i = 0; i < n1; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < b.size(); ++j)
      if (model.allows(a.point(ui), b.point(j))) adj[ui].push_back(j);
  }
  return adj;
}

std::vector<std::size_t> hopcroft_karp(const std::vector<std::vector<std::size_t>>& adj,
                                       std::size_t n_right) {
  const std::size_t n_left = adj.size();
  std::vector<std::size_t> match_l(n_left, kNone), match_r(n_right, kNone);
  std::vector<std::size_t> dist(n_left);
  constexpr std::size_t kInf = kNone;

  const auto bfs = [&] {
    std::queue<std::size_t> queue;
    bool found = false;
    for (std::size_t u = 0; u < n_left; ++u) {
      if (match_l[u] == kNone) {
        dist[u] = 0;
        queue.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v : adj[u]) {
        const std::size_t w = match_r[v];
        if (w == kNone) {
          found = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  };

  std::vector<std::size_t> it(n_left);
  const auto dfs = [&](auto&& self, std::size_t u) -> bool {
    for (; it[u] < adj[u].size(); ++it[u]) {
      const std::size_t v = adj[u][it[u]];
      const std::size_t w = match_r[v];
      if (w == kNone || (dist[w] == dist[u] + 1 && self(self, w))) {
        match_l[u] = v;
        match_r[v] = u;
        ++it[u];
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t u = 0; u < n_left; ++u)
      if (match_l[u] == kNone) dfs(dfs, u);
  }
  return match_l;
}

std::vector<std::size_t> greedy_matching(const std::vector<std::vector<std::size_t>>& adj,
                                         std::size_t n_right) {
  std::vector<std::size_t> match_l(adj.size(), kNone);
  std::vector<bool> taken(n_right, false);
  for (std::size_t u = 0; u < adj.size(); ++u)
    for (std::size_t v : adj[u])
      if (!taken[v]) {
        taken[v] = true;
        match_l[u] = v;
        break;
      }
  return match_l;
}

TransportResult tv_eps_matching(const EmpiricalSample& a, const EmpiricalSample& b,
                                const AttackModel& model, MatchingAlgorithm algorithm) {
  if (!a.uniform() || !b.uniform()) {
    throw std::invalid_argument("tv_eps_matching: samples must carry uniform weights; "
                                "use ot_maxflow for weighted atoms");
  }
  const auto adj = attack_graph(a, b, model);
  const auto match = algorithm == MatchingAlgorithm::hopcroft_karp
                         ? hopcroft_karp(adj, b.size())
                         : greedy_matching(adj, b.size());
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  TransportResult r;
  for (std::size_t i = 0; i < match.size(); ++i) {
    if (match[i] == kNone) continue;
    ++r.matching_size;
    r.plan.push_back({i, match[i], 1.0 / std::max(n1, n2)});  // min of the two atom masses
  }
  const double size = static_cast<double>(r.matching_size);
  r.unmatched_left = n1 - size;
  r.unmatched_right = n2 - size;
  r.value = 0.5 * (r.unmatched_left / n1 + r.unmatched_right / n2);
  r.matched_mass = 1.0 - r.value;
  return r;
}

namespace {

/// Dinic max-flow on a small dense-ish graph with real capacities.
class Dinic {
 public:
  explicit Dinic(std::size_t n) : graph_(n), level_(n), it_(n) {}

  std::size_t add_edge(std::size_t u, std::size_t v, double cap) {
    graph_[u].push_back(edges_.size());
    edges_.push_back({v, cap, 0.0});
    graph_[v].push_back(edges_.size());
    edges_.push_back({u, 0.0, 0.0});
    return edges_.size() - 2;
  }

  double flow_on(std::size_t edge) const { return edges_[edge].flow; }

  double max_flow(std::size_t s, std::size_t t) {
    double total = 0.0;
    while (levels(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (true) {
        const double pushed = augment(s, t, std::numeric_limits<double>::infinity());
        if (pushed <= kFlowCutoff) break;
        total += pushed;
      }
    }
    return total;
  }

 private:
  struct Edge {
    std::size_t to;
    double cap;
    double flow;
  };

  double residual(const Edge& e) const { return e.cap - e.flow; }

  bool levels(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> queue;
    level_[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t id : graph_[u]) {
        const Edge& e = edges_[id];
        if (level_[e.to] < 0 && residual(e) > kFlowCutoff) {
          level_[e.to] = level_[u] + 1;
          queue.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double augment(std::size_t u, std::size_t t, double limit) {
    if (u == t) return limit;
    for (; it_[u] < graph_[u].size(); ++it_[u]) {
      const std::size_t id = graph_[u][it_[u]];
      Edge& e = edges_[id];
      if (level_[e.to] != level_[u] + 1 || residual(e) <= kFlowCutoff) continue;
      const double pushed = augment(e.to, t, std::min(limit, residual(e)));
      if (pushed > kFlowCutoff) {
        e.flow += pushed;
        edges_[id ^ 1].flow -= pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  std::vector<std::vector<std::size_t>> graph_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

}  // namespace

TransportResult ot_maxflow(const EmpiricalSample& a, const EmpiricalSample& b,
                           const AttackModel& model) {
  const auto adj = attack_graph(a, b, model);
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t source = n1 + n2;
  const std::size_t sink = source + 1;
  Dinic flow(n1 + n2 + 2);
  for (std::size_t i = 0; i < n1; ++i) flow.add_edge(source, i, a.weights()[i]);
  for (std::size_t j = 0; j < n2; ++j) flow.add_edge(n1 + j, sink, b.weights()[j]);
  // Allowed edges never bind: total mass is 1.
  std::vector<PlanEntry> candidates;
  std::vector<std::size_t> edge_ids;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j : adj[i]) {
      edge_ids.push_back(flow.add_edge(i, n1 + j, 2.0));
      candidates.push_back({i, j, 0.0});
    }

  TransportResult r;
  r.matched_mass = std::min(1.0, flow.max_flow(source, sink));
  r.value = std::clamp(1.0 - r.matched_mass, 0.0, 1.0);
  r.unmatched_left = 1.0 - r.matched_mass;
  r.unmatched_right = 1.0 - r.matched_mass;
  for (std::size_t e = 0; e < edge_ids.size(); ++e) {
    const double mass = flow.flow_on(edge_ids[e]);
    if (mass > kFlowCutoff) r.plan.push_back({candidates[e].i, candidates[e].j, mass});
  }
  return r;
}

double strassen_enumerate(const EmpiricalSample& a, const EmpiricalSample& b,
                          const AttackModel& model) {
  const std::size_t n1 = a.size();
  if (n1 > 20) throw UnsupportedError("strassen_enumerate: more than 20 atoms on the left");
  const auto adj = attack_graph(a, b, model);
  const std::size_t n2 = b.size();

  // Walk subsets in Gray-code order, tracking how many members of U reach
  // each right atom.
  std::vector<std::size_t> reach(n2, 0);
  std::vector<bool> in_u(n1, false);
  double mass_u = 0.0;
  double mass_n = 0.0;
  double best = 0.0;  // U = empty set
  std::uint64_t best_set = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n1;
  for (std::uint64_t g = 1; g < subsets; ++g) {
    const auto i = static_cast<std::size_t>(std::countr_zero(g));
    if (!in_u[i]) {
      in_u[i] = true;
      mass_u += a.weights()[i];
      for (std::size_t j : adj[i])
        if (reach[j]++ == 0) mass_n += b.weights()[j];
    } else {
      in_u[i] = false;
      mass_u -= a.weights()[i];
      for (std::size_t j : adj[i])
        if (--reach[j] == 0) mass_n -= b.weights()[j];
    }
    if (mass_u - mass_n > best) {
      best = mass_u - mass_n;
      best_set = g ^ (g >> 1);
    }
  }
  if (best_set == 0) return 0.0;

  // Recompute the winner from scratch; the running sums drift.
  std::vector<bool> hit(n2, false);
  double exact_u = 0.0;
  double exact_n = 0.0;
  for (std::size_t i = 0; i < n1; ++i) {
    if (((best_set >> i) & 1U) == 0) continue;
    exact_u += a.weights()[i];
    for (std::size_t j : adj[i])
      if (!hit[j]) {
        hit[j] = true;
        exact_n += b.weights()[j];
      }
  }
  return std::clamp(exact_u - exact_n, 0.0, 1.0);
}

}  // namespace specbound
