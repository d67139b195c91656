#include "specbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "specbound/error.hpp"
#include "specbound/kernels.hpp"
#include "specbound/lp_geometry.hpp"
#include "specbound/rng.hpp"

namespace specbound {

namespace {

constexpr int kMaxSweeps = 80;

// One-sided Jacobi on the columns of B (rows x cols, stored column-major in w).
// On return the columns of w are mutually orthogonal and B V = W.
void hestenes(std::vector<double>& w, std::size_t rows, std::size_t cols,
              std::vector<double>* v) {
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < cols; ++i) {
      double* wi = w.data() + i * rows;
      for (std::size_t j = i + 1; j < cols; ++j) {
        double* wj = w.data() + j * rows;
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
          alpha += wi[r] * wi[r];
          beta += wj[r] * wj[r];
          gamma += wi[r] * wj[r];
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t r = 0; r < rows; ++r) {
          const double a = wi[r], b = wj[r];
          wi[r] = c * a - s * b;
          wj[r] = s * a + c * b;
        }
        if (v != nullptr) {
          const std::size_t n = v->size() / cols;
          double* vi = v->data() + i * n;
          double* vj = v->data() + j * n;
          for (std::size_t r = 0; r < n; ++r) {
            const double a = vi[r], b = vj[r];
            vi[r] = c * a - s * b;
            vj[r] = s * a + c * b;
          }
        }
      }
    }
    if (!rotated) return;
  }
}

double column_norm(const std::vector<double>& w, std::size_t rows, std::size_t j) {
  double amax = 0.0;
  for (std::size_t r = 0; r < rows; ++r) amax = std::max(amax, std::abs(w[j * rows + r]));
  if (amax == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double t = w[j * rows + r] / amax;
    s += t * t;
  }
  return amax * std::sqrt(s);
}

void require_finite(const Matrix& a, const char* who) {
  if (a.empty()) throw DimensionError(std::string(who) + ": empty matrix");
  if (!a.all_finite()) throw DomainError(std::string(who) + ": matrix has non-finite entries");
}

}  // namespace

SingularSystem singular_system(const Matrix& a) {
  require_finite(a, "singular_system");
  const std::size_t k = a.rows();
  const std::size_t m = a.cols();
  const std::size_t r = std::min(k, m);
  SingularSystem out;
  out.right_vectors = Matrix(m, r);

  if (m <= k) {
    // Orthogonalize the m columns of A; V accumulates the rotations.
    std::vector<double> w(k * m);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < k; ++i) w[j * k + i] = a(i, j);
    std::vector<double> v(m * m, 0.0);
    for (std::size_t j = 0; j < m; ++j) v[j * m + j] = 1.0;
    hestenes(w, k, m, &v);
    std::vector<double> norms(m);
    for (std::size_t j = 0; j < m; ++j) norms[j] = column_norm(w, k, j);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });
    for (std::size_t c = 0; c < r; ++c) {
      out.values.push_back(norms[order[c]]);
      for (std::size_t i = 0; i < m; ++i) out.right_vectors(i, c) = v[order[c] * m + i];
    }
  } else {
    // Orthogonalize the k columns of A^T (length m). The orthogonalized columns
    // are sigma_j times the right singular vectors of A.
    std::vector<double> w(m * k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < m; ++i) w[j * m + i] = a(j, i);
    hestenes(w, m, k, nullptr);
    std::vector<double> norms(k);
    for (std::size_t j = 0; j < k; ++j) norms[j] = column_norm(w, m, j);
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });
    for (std::size_t c = 0; c < r; ++c) {
      const double sv = norms[order[c]];
      out.values.push_back(sv);
      for (std::size_t i = 0; i < m; ++i)
        out.right_vectors(i, c) = sv > 0.0 ? w[order[c] * m + i] / sv : (i == c ? 1.0 : 0.0);
    }
  }
  return out;
}

Spectrum spectrum(const Matrix& a, double rank_tol_factor) {
  require_finite(a, "spectrum");
  Spectrum out;
  out.singular_values = singular_system(a).values;
  out.frobenius = a.frobenius_norm();
  out.spectral = out.singular_values.empty() ? 0.0 : out.singular_values.front();
  const double cutoff =
      out.spectral * static_cast<double>(std::max(a.rows(), a.cols())) * rank_tol_factor;
  out.rank = 0;
  if (out.spectral > 0.0)
    for (double s : out.singular_values)
      if (s > cutoff) ++out.rank;
  return out;
}

SymmetricEigen symmetric_eigen(const Matrix& s) {
  require_finite(s, "symmetric_eigen");
  const std::size_t n = s.rows();
  if (s.cols() != n) throw DimensionError("symmetric_eigen: matrix is not square");
  double scale = 0.0;
  for (double v : s.data()) scale = std::max(scale, std::abs(v));
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(s(i, j) - s(j, i)) > 1e-10 * std::max(1.0, scale)) {
        throw DomainError("symmetric_eigen: matrix is not symmetric");
      }
      a(i, j) = 0.5 * (s(i, j) + s(j, i));
    }
  Matrix v = Matrix::identity(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off <= 1e-30 * std::max(1.0, scale * scale)) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double sn = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - sn * arq;
          a(r, q) = sn * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = a(p, r), aqr = a(q, r);
          a(p, r) = c * apr - sn * aqr;
          a(q, r) = sn * apr + c * aqr;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - sn * vrq;
          v(r, q) = sn * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  SymmetricEigen out;
  out.vectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values.push_back(a(order[c], order[c]));
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::exact: return "exact";
    case NormKind::brute: return "brute";
    case NormKind::lower_bound: return "lower_bound";
  }
  return "unknown";
}

namespace {

// Maximizer of <g, x> over the l_p unit sphere; zero entries of g break toward +1.
std::vector<double> dual_direction(const std::vector<double>& g, Exponent p) {
  const std::size_t m = g.size();
  std::vector<double> x(m, 0.0);
  double gmax = 0.0;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < m; ++j)
    if (std::abs(g[j]) > gmax) {
      gmax = std::abs(g[j]);
      arg = j;
    }
  const auto sgn = [](double v) { return v < 0.0 ? -1.0 : 1.0; };
  if (p.is_infinite()) {
    for (std::size_t j = 0; j < m; ++j) x[j] = sgn(g[j]);
    return x;
  }
  if (p.is_one() || gmax == 0.0) {
    x[arg] = sgn(g[arg]);
    return x;
  }
  const double power = p.conjugate().value() - 1.0;
  for (std::size_t j = 0; j < m; ++j) x[j] = sgn(g[j]) * std::pow(std::abs(g[j]) / gmax, power);
  const double norm = lp_norm(x, p);
  for (double& v : x) v /= norm;
  return x;
}

// A subgradient of ||.||_q at y, up to a positive factor.
std::vector<double> norm_subgradient(const std::vector<double>& y, Exponent q) {
  const std::size_t k = y.size();
  std::vector<double> g(k, 0.0);
  const auto sgn = [](double v) { return v < 0.0 ? -1.0 : 1.0; };
  double ymax = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (std::abs(y[i]) > ymax) {
      ymax = std::abs(y[i]);
      arg = i;
    }
  if (q.is_infinite()) {
    g[arg] = sgn(y[arg]);
    return g;
  }
  if (q.is_one()) {
    for (std::size_t i = 0; i < k; ++i) g[i] = sgn(y[i]);
    return g;
  }
  if (ymax == 0.0) return g;
  const double power = q.value() - 1.0;
  for (std::size_t i = 0; i < k; ++i) g[i] = sgn(y[i]) * std::pow(std::abs(y[i]) / ymax, power);
  return g;
}

struct AscentOutcome {
  double value;
  std::vector<double> x;
};

AscentOutcome ascend(const Matrix& a, Exponent p, Exponent q, std::vector<double> x,
                     const InducedNormBudget& budget) {
  double value = lp_norm(a.apply(x), q);
  for (int it = 0; it < budget.iterations; ++it) {
    const auto y = a.apply(x);
    const auto g = a.apply_transpose(norm_subgradient(y, q));
    bool zero = true;
    for (double v : g) zero = zero && v == 0.0;
    if (zero) break;
    auto next = dual_direction(g, p);
    const double next_value = lp_norm(a.apply(next), q);
    if (next_value <= value + budget.tolerance) {
      if (next_value > value) {
        value = next_value;
        x = std::move(next);
      }
      break;
    }
    value = next_value;
    x = std::move(next);
  }
  return {value, std::move(x)};
}

std::vector<double> ascent_start(const Matrix& a, Exponent p, int restart,
                                 const std::vector<double>& top_right, std::uint64_t seed) {
  std::vector<double> x(a.cols());
  if (restart == 0) {
    x = top_right;
    const double norm = lp_norm(x, p);
    if (norm > 0.0) {
      for (double& v : x) v /= norm;
      return x;
    }
  }
  SeededRng rng = SeededRng(seed, 0xA5CE17ULL).split(static_cast<std::uint64_t>(restart));
  sample_lp_point(p, Surface::sphere, rng, x);
  return x;
}

void validate_budget(const InducedNormBudget& budget) {
  if (budget.restarts < 1) throw std::invalid_argument("induced_norm: restarts must be >= 1");
  if (budget.iterations < 0) throw std::invalid_argument("induced_norm: iterations must be >= 0");
}

std::vector<double> top_right_vector(const Matrix& a) {
  const auto sys = singular_system(a);
  return sys.right_vectors.column(0);
}

template <bool Parallel>
InducedNormResult run_ascent(const Matrix& a, Exponent p, Exponent q,
                             const InducedNormBudget& budget) {
  require_finite(a, "induced_norm");
  validate_budget(budget);
  const auto top = top_right_vector(a);
  std::vector<AscentOutcome> outcomes(static_cast<std::size_t>(budget.restarts));
  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(kernels::configured_threads())
    for (int r = 0; r < budget.restarts; ++r) {
      outcomes[static_cast<std::size_t>(r)] =
          ascend(a, p, q, ascent_start(a, p, r, top, budget.seed), budget);
    }
  } else {
    for (int r = 0; r < budget.restarts; ++r) {
      outcomes[static_cast<std::size_t>(r)] =
          ascend(a, p, q, ascent_start(a, p, r, top, budget.seed), budget);
    }
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (outcomes[r].value > outcomes[best].value) best = r;
  return {outcomes[best].value, NormKind::lower_bound, std::move(outcomes[best].x)};
}

}  // namespace

InducedNormResult induced_norm_ascent(const Matrix& a, Exponent p, Exponent q,
                                      const InducedNormBudget& budget) {
  return run_ascent<true>(a, p, q, budget);
}

namespace serial {
InducedNormResult induced_norm_ascent(const Matrix& a, Exponent p, Exponent q,
                                      const InducedNormBudget& budget) {
  return run_ascent<false>(a, p, q, budget);
}
}  // namespace serial

InducedNormResult induced_norm(const Matrix& a, Exponent p, Exponent q,
                               const InducedNormBudget& budget) {
  require_finite(a, "induced_norm");
  const std::size_t k = a.rows();
  const std::size_t m = a.cols();
  InducedNormResult out;

  if (p.is_one()) {
    // Extreme points of the l_1 ball are +-e_j.
    std::size_t best = 0;
    out.value = -1.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double v = lp_norm(a.column(j), q);
      if (v > out.value) {
        out.value = v;
        best = j;
      }
    }
    out.kind = NormKind::exact;
    out.witness.assign(m, 0.0);
    out.witness[best] = 1.0;
    return out;
  }

  if (q.is_infinite()) {
    const Exponent dual = p.conjugate();
    std::size_t best = 0;
    out.value = -1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double v = lp_norm(a.row(i), dual);
      if (v > out.value) {
        out.value = v;
        best = i;
      }
    }
    out.kind = NormKind::exact;
    // Hoelder equality: x aligned with |row|^{p*-1}.
    const auto row = a.row(best);
    std::vector<double> g(row.begin(), row.end());
    out.witness = dual_direction(g, p);
    return out;
  }

  if (p.is_two() && q.is_two()) {
    const auto sys = singular_system(a);
    out.value = sys.values.front();
    out.kind = NormKind::exact;
    out.witness = sys.right_vectors.column(0);
    const double norm = lp_norm(out.witness, p);
    if (norm > 0.0)
      for (double& v : out.witness) v /= norm;
    return out;
  }

  if (p.is_infinite() && m <= budget.brute_force_max_cols) {
    const std::vector<Exponent> qs{q};
    auto search = kernels::linf_vertex_search(a, qs);
    out.value = search.value.front();
    out.kind = NormKind::brute;
    out.witness = std::move(search.vertex.front());
    return out;
  }

  return induced_norm_ascent(a, p, q, budget);
}

}  // namespace specbound
