#include "specbound/dro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "specbound/error.hpp"

namespace specbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAgreeTol = 1e-9;

bool sorted_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); }) &&
         std::is_sorted(v.begin(), v.end());
}

struct Validator {
  void operator()(const OptInstance& in) const {
    if (in.c.empty()) throw std::invalid_argument("opt: empty c");
    if (!sorted_finite(in.c)) throw std::invalid_argument("opt: c must be finite and sorted");
    if (!std::isfinite(in.a) || !std::isfinite(in.b)) throw std::invalid_argument("opt: a, b must be finite");
  }
  void operator()(const OptbisInstance& in) const {
    if (in.d.empty()) throw std::invalid_argument("optbis: empty d");
    if (!sorted_finite(in.d) || in.d.front() < 0.0) {
      throw std::invalid_argument("optbis: d must be finite, sorted and nonnegative");
    }
    if (!(in.eps >= 0.0) || !std::isfinite(in.eps)) throw std::invalid_argument("optbis: eps must be >= 0");
  }
  void operator()(const RealoptInstance& in) const {
    if (in.a.empty()) throw std::invalid_argument("realopt: empty a");
    if (!sorted_finite(in.a)) throw std::invalid_argument("realopt: a must be finite and sorted");
    if (!std::isfinite(in.b) || in.a.back() > in.b) throw std::invalid_argument("realopt: need a_i <= b");
    if (!(in.eps >= 0.0) || !std::isfinite(in.eps)) throw std::invalid_argument("realopt: eps must be >= 0");
  }
};

struct Evaluator {
  double x;
  double operator()(const OptInstance& in) const {
    if (x > in.b) return kInf;
    double f = in.a * x;
    for (double c : in.c) f += std::abs(c - x);
    return f;
  }
  double operator()(const OptbisInstance& in) const {
    if (x < 0.0) return kInf;
    double s = 0.0;
    for (double d : in.d) s += std::max(0.0, 1.0 - x * d);
    return x * in.eps + s / static_cast<double>(in.d.size());
  }
  double operator()(const RealoptInstance& in) const {
    if (x < 0.0) return kInf;
    double s = 0.0;
    for (double a : in.a) s += std::max(a, in.b - x);
    return x * in.eps + s / static_cast<double>(in.a.size());
  }
};

// Minimum over candidates; ties toward the smallest point.
PwlSolution minimize_over(const PwlInstance& instance, std::vector<double> candidates) {
  std::sort(candidates.begin(), candidates.end());
  PwlSolution s;
  s.value = kInf;
  for (double x : candidates) {
    const double f = objective(instance, x);
    if (f < s.value) {
      s.value = f;
      s.minimizer = x;
    }
  }
  return s;
}

void attach(PwlSolution& s, std::optional<double> closed) {
  s.closed_form_value = closed;
  s.agrees = closed.has_value() && std::abs(*closed - s.value) <= kAgreeTol;
}

std::vector<double> prefix_sums(std::span<const double> v) {
  std::vector<double> out(v.size() + 1, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) out[i + 1] = out[i] + v[i];
  return out;
}

// t * x with 0 * inf = 0.
double scaled(double t, double x) { return t == 0.0 ? 0.0 : t * x; }

}  // namespace

void validate(const PwlInstance& instance) { std::visit(Validator{}, instance); }

double objective(const PwlInstance& instance, double x) {
  return std::visit(Evaluator{x}, instance);
}

PwlSolution solve_opt(double a, std::span<const double> c, double b) {
  const PwlInstance instance = OptInstance{a, {c.begin(), c.end()}, b};
  validate(instance);
  const double n = static_cast<double>(c.size());
  if (a > n) {
    throw UnboundedError("opt: a > n makes the objective unbounded below as x -> -inf");
  }
  std::vector<double> candidates{b};
  for (double ci : c)
    if (ci <= b) candidates.push_back(ci);
  PwlSolution s = minimize_over(instance, std::move(candidates));
  attach(s, opt_closed_form(a, c, b));
  return s;
}

PwlSolution solve_optbis(std::span<const double> d, double eps) {
  const PwlInstance instance = OptbisInstance{{d.begin(), d.end()}, eps};
  validate(instance);
  std::vector<double> candidates{0.0};
  for (double di : d)
    if (di > 0.0) candidates.push_back(1.0 / di);
  PwlSolution s = minimize_over(instance, std::move(candidates));
  attach(s, optbis_closed_form(d, eps));
  return s;
}

RealoptSolution solve_realopt(std::span<const double> a, double b, double eps) {
  const PwlInstance instance = RealoptInstance{{a.begin(), a.end()}, b, eps};
  validate(instance);
  std::vector<double> candidates{0.0};
  for (double ai : a) candidates.push_back(b - ai);
  RealoptSolution s;
  static_cast<PwlSolution&>(s) = minimize_over(instance, std::move(candidates));
  attach(s, realopt_closed_form(a, b, eps));
  const double mean = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(a.size());
  s.delta = s.value - mean;
  const double upper = eps * (b - a.front());
  const double slack = 1e-12 * std::max(1.0, std::abs(mean) + std::abs(upper));
  s.delta_in_range = s.delta >= -slack && s.delta <= upper + slack;
  return s;
}

std::optional<double> opt_closed_form(double a, std::span<const double> c, double b) {
  const std::size_t n = c.size();
  const double nd = static_cast<double>(n);
  const auto cbar = prefix_sums(c);
  // c_0 = -inf, c_{n+1} = b, 1-based c_i = c[i - 1].
  const auto c_at = [&](std::size_t i) {
    if (i == 0) return -kInf;
    if (i == n + 1) return b;
    return c[i - 1];
  };
  const double split = (nd - a) / 2.0;
  double best = kInf;
  for (std::size_t i = 0; i <= n; ++i) {
    const double di = a + 2.0 * static_cast<double>(i) - nd;
    const double point = static_cast<double>(i) <= split ? c_at(i + 1) : c_at(i);
    best = std::min(best, scaled(di, point) - 2.0 * cbar[i]);
  }
  const double v = cbar[n] + best;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<double> optbis_closed_form(std::span<const double> d, double eps) {
  const std::size_t n = d.size();
  const double nd = static_cast<double>(n);
  const auto dbar = prefix_sums(d);
  const auto n0 = static_cast<std::size_t>(std::count(d.begin(), d.end(), 0.0));
  // d_0 = 0 and d_{n+1} = inf; 1-based d_i = d[i - 1].
  const auto d_at = [&](std::size_t i) {
    if (i == 0) return 0.0;
    if (i == n + 1) return kInf;
    return d[i - 1];
  };
  std::size_t i_eps = n0;
  bool has_i_eps = false;
  for (std::size_t i = n0; i <= n; ++i)
    if (dbar[i] <= eps) {
      i_eps = i;
      has_i_eps = true;
    }
  if (!has_i_eps) return std::nullopt;

  const auto term = [&](std::size_t i, double denom) {
    return static_cast<double>(i) + (nd * eps - dbar[i]) / denom;
  };
  double best = kInf;
  for (std::size_t i = n0; i < i_eps; ++i) {
    const double t = term(i, d_at(i));
    if (std::isnan(t)) return std::nullopt;
    best = std::min(best, t);
  }
  for (std::size_t i = i_eps; i <= n; ++i) {
    const double t = term(i, d_at(i + 1));
    if (std::isnan(t)) return std::nullopt;
    best = std::min(best, t);
  }
  const double v = best / nd;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<double> realopt_closed_form(std::span<const double> a, double b, double eps) {
  const std::size_t n = a.size();
  const double nd = static_cast<double>(n);
  const double mean = std::accumulate(a.begin(), a.end(), 0.0) / nd;
  std::vector<double> alpha(n);
  for (std::size_t i = 0; i < n; ++i) alpha[i] = b - a[i];
  if (!(alpha.front() > 0.0)) return mean;

  std::size_t n0 = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (alpha[i - 1] > 0.0) n0 = i;
  const auto abar = prefix_sums(alpha);
  // alpha_0 = +inf, alpha_{n0+1} = 0, 1-based alpha_i = alpha[i - 1].
  const auto alpha_at = [&](std::size_t i) {
    if (i == 0) return kInf;
    if (i == n0 + 1) return 0.0;
    return alpha[i - 1];
  };
  double best = kInf;
  for (std::size_t i = 0; i <= n0; ++i) {
    const double slope = nd * eps - static_cast<double>(i);
    const double t =
        abar[i] + std::min(scaled(slope, alpha_at(i + 1)), scaled(slope, alpha_at(i)));
    best = std::min(best, t);
  }
  const double v = mean + best / nd;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

namespace {

struct GridSpan {
  double lo;
  double hi;
};

struct SpanFinder {
  GridSpan operator()(const OptInstance& in) const {
    const double lo = std::min(in.c.front(), in.b);
    const double margin = std::max(1.0, in.b - lo);
    return {lo - margin, in.b};
  }
  GridSpan operator()(const OptbisInstance& in) const {
    double hi = 0.0;
    for (double d : in.d)
      if (d > 0.0) hi = std::max(hi, 1.0 / d);
    return {0.0, 2.0 * hi + 1.0};
  }
  GridSpan operator()(const RealoptInstance& in) const {
    const double hi = in.b - in.a.front();
    return {0.0, 2.0 * hi + 1.0};
  }
};

}  // namespace

double breakpoint_oracle(const PwlInstance& instance, std::size_t grid_points) {
  validate(instance);
  if (grid_points < 3) throw std::invalid_argument("breakpoint_oracle: need at least 3 grid points");
  const auto [lo, hi] = std::visit(SpanFinder{}, instance);
  const double h = (hi - lo) / static_cast<double>(grid_points - 1);
  std::size_t best_i = 0;
  double best = kInf;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = i + 1 == grid_points ? hi : lo + h * static_cast<double>(i);
    const double f = objective(instance, x);
    if (f < best) {
      best = f;
      best_i = i;
    }
  }
  // Convexity puts the true minimizer within one cell of the best grid point.
  double l = lo + h * static_cast<double>(best_i == 0 ? 0 : best_i - 1);
  double r = std::min(hi, lo + h * static_cast<double>(best_i + 1));
  for (int it = 0; it < 200 && r - l > 0.0; ++it) {
    const double m1 = l + (r - l) / 3.0;
    const double m2 = r - (r - l) / 3.0;
    if (objective(instance, m1) <= objective(instance, m2)) {
      r = m2;
    } else {
      l = m1;
    }
  }
  return std::min(best, objective(instance, 0.5 * (l + r)));
}

}  // namespace specbound
