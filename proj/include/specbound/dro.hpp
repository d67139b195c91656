#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace specbound {

// Convex piecewise-linear minimizations of the distributionally robust risk.

/// min_{x <= b} a x + sum_i |c_i - x|, c sorted nondecreasing.
struct OptInstance {
  double a = 0.0;
  std::vector<double> c;
  double b = 0.0;
};

/// min_{alpha >= 0} alpha eps + (1/n) sum_i (1 - alpha d_i)_+, d sorted, d_i >= 0.
struct OptbisInstance {
  std::vector<double> d;
  double eps = 0.0;
};

/// min_{alpha >= 0} alpha eps + (1/n) sum_i max(a_i, b - alpha), a sorted, a_i <= b.
struct RealoptInstance {
  std::vector<double> a;
  double b = 0.0;
  double eps = 0.0;
};

using PwlInstance = std::variant<OptInstance, OptbisInstance, RealoptInstance>;

struct PwlSolution {
  double value = 0.0;
  double minimizer = 0.0;
  // The lemma's index formula, when it evaluates to a finite number.
  std::optional<double> closed_form_value;
  bool agrees = false;  // |value - closed_form_value| <= 1e-9
};

struct RealoptSolution : PwlSolution {
  double delta = 0.0;  // value - mean(a)
  bool delta_in_range = false;  // 0 <= delta <= eps (b - a_1), up to 1e-12
};

// Throws std::invalid_argument on an invalid instance (unsorted data, d_i < 0,
// eps < 0, a_i > b, empty data).
void validate(const PwlInstance& instance);

// Objective value at x (x is alpha for the two dual problems). +inf outside
// the feasible set.
double objective(const PwlInstance& instance, double x);

/// Exact minimum by evaluating the breakpoints; ties go to the smallest
/// minimizer. Throws UnboundedError when a > n.
PwlSolution solve_opt(double a, std::span<const double> c, double b);
PwlSolution solve_optbis(std::span<const double> d, double eps);
RealoptSolution solve_realopt(std::span<const double> a, double b, double eps);

/// Literal evaluations of the printed index formulas; nullopt when a term is
/// undefined or the result is not finite.
std::optional<double> opt_closed_form(double a, std::span<const double> c, double b);
std::optional<double> optbis_closed_form(std::span<const double> d, double eps);
std::optional<double> realopt_closed_form(std::span<const double> a, double b, double eps);

/// Independent check: minimum of the objective over a uniform grid of
/// grid_points spanning every breakpoint with a margin, refined by ternary
/// search on the bracket around the best grid point.
double breakpoint_oracle(const PwlInstance& instance, std::size_t grid_points = 100000);

}  // namespace specbound
