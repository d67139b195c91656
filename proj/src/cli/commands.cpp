#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "specbound/and_analysis.hpp"
#include "specbound/bounds.hpp"
#include "specbound/dro.hpp"
#include "specbound/fluctuation.hpp"
#include "specbound/lp_geometry.hpp"
#include "specbound/numerics.hpp"
#include "specbound/rng.hpp"
#include "specbound/spectral.hpp"
#include "specbound/transport.hpp"

namespace specbound::cli {

bool Args::has(const std::string& name) const { return values.count(name) > 0; }

const std::string& Args::str(const std::string& name) const {
  const auto it = values.find(name);
  if (it == values.end()) throw UsageError("missing required option --" + name);
  return it->second;
}

double Args::num(const std::string& name) const { return parse_double(str(name), "--" + name); }

std::size_t Args::count(const std::string& name) const {
  const double v = num(name);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) {
    throw UsageError("--" + name + ": expected a nonnegative integer");
  }
  return static_cast<std::size_t>(v);
}

std::uint64_t Args::u64(const std::string& name) const {
  const std::string& s = str(name);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("--" + name + ": expected a nonnegative integer");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw UsageError("--" + name + ": out of range");
  }
}

Exponent Args::exponent(const std::string& name) const { return parse_exponent(str(name), "--" + name); }

std::vector<double> Args::list(const std::string& name) const { return parse_list(str(name), "--" + name); }

bool Args::flag(const std::string& name) const {
  const auto it = flags.find(name);
  return it != flags.end() && it->second;
}

namespace {

std::string load(const Args& args, Report& report, const std::string& name) {
  const std::string path = args.str(name);
  for (const auto& [flag, contents] : report.inputs)
    if (flag == name) return contents;
  std::string contents = read_file(path);
  report.inputs.emplace_back(name, contents);
  return contents;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json matrix_json(const Matrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    rows.push_back(numbers({r.begin(), r.end()}));
  }
  return rows;
}

Surface parse_surface(const std::string& s) {
  if (s == "sphere") return Surface::sphere;
  if (s == "ball") return Surface::ball;
  throw UsageError("--surface/--probe: expected 'sphere' or 'ball'");
}

MomentFunction parse_moment(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("--moment: expected power:P or subgaussian:SIGMA");
  const std::string kind = s.substr(0, colon);
  const double param = parse_double(s.substr(colon + 1), "--moment");
  if (kind == "power") return MomentFunction::power(param);
  if (kind == "subgaussian") return MomentFunction::subgaussian(param);
  throw UsageError("--moment: unknown kind '" + kind + "'");
}

InducedNormBudget budget_from(const Args& args) {
  InducedNormBudget b;
  b.restarts = static_cast<int>(args.count("restarts"));
  b.iterations = static_cast<int>(args.count("iterations"));
  b.tolerance = args.num("tolerance");
  b.seed = args.u64("seed");
  return b;
}

Json verdict_block(const BoundCertificate& c) {
  return {{"estimate", number(c.estimate)},       {"std_error", number(c.std_error)},
          {"bound", number(c.bound)},             {"constant", number(c.constant)},
          {"slack_sigmas", number(c.slack_sigmas)}, {"verdict", to_string(c.verdict)}};
}

// --- sphere-sample, sigma2 -------------------------------------------------

void cmd_sphere_sample(const Args& args, Report& report) {
  const LpSpace space(args.count("m"), args.exponent("p"));
  const Surface surface = parse_surface(args.str("surface"));
  const SeededRng rng(args.u64("seed"));
  const Matrix pts = sample_lp(space, surface, args.count("n"), rng);
  report.results["points"] = matrix_json(pts);
  Json norms = Json::array();
  for (std::size_t i = 0; i < pts.rows(); ++i) norms.push_back(number(lp_norm(pts.row(i), space.p)));
  report.results["norms"] = norms;
}

void cmd_sigma2(const Args& args, Report& report) {
  const auto s = sigma2(LpSpace(args.count("m"), args.exponent("p")));
  report.results["exact"] = number(s.exact);
  report.results["asymptotic"] = number(s.asymptotic);
  report.results["bound"] = number(s.bound);
}

// --- matrix commands ---------------------------------------------------------

void cmd_opnorm(const Args& args, Report& report) {
  const Matrix a = parse_matrix_csv(load(args, report, "matrix"), "--matrix");
  const auto r = induced_norm(a, args.exponent("p"), args.exponent("q"), budget_from(args));
  report.results["value"] = number(r.value);
  report.results["kind"] = to_string(r.kind);
  report.results["witness"] = numbers(r.witness);
  if (r.kind == NormKind::lower_bound) {
    report.warnings.push_back("no closed form for this (p, q): value is a multi-start ascent lower bound");
  }
}

void cmd_and_coeff(const Args& args, Report& report) {
  const Matrix a = parse_matrix_csv(load(args, report, "matrix"), "--matrix");
  const Exponent p = args.exponent("p");
  const auto qs = parse_exponent_list(args.str("q"), "--q");
  const SeededRng rng(args.u64("seed"));
  const auto estimates = and_estimate_multi(a, p, qs, args.count("n"), rng);
  Json out = Json::array();
  for (const auto& e : estimates) {
    Json row = {{"q", e.q.to_string()},
                {"mean", number(e.mean)},
                {"std_error", number(e.std_error)},
                {"n", e.n},
                {"frobenius_bound", verdict_block(spectum_certificate(a, e))}};
    if (p.is_two() && e.q.is_two()) row["euclidean_bound"] = verdict_block(euclidean_and_certificate(a, e));
    out.push_back(row);
  }
  report.results["estimates"] = out;
  report.results["frobenius"] = number(a.frobenius_norm());
}

void cmd_ratio_cert(const Args& args, Report& report) {
  const Matrix a = parse_matrix_csv(load(args, report, "matrix"), "--matrix");
  const SeededRng rng(args.u64("seed"));
  const auto c = ratio_certificate(a, args.exponent("p"), args.exponent("q"), args.count("n"), rng,
                                   budget_from(args));
  auto& r = report.results;
  r["numerator"] = number(c.numerator);
  r["numerator_kind"] = to_string(c.numerator_kind);
  r["numerator_lower_bound"] = c.numerator_lower_bound;
  r["and_mean"] = number(c.and_mean);
  r["and_std_error"] = number(c.and_std_error);
  r["ratio_estimate"] = number(c.ratio_estimate);
  r["ratio_std_error"] = number(c.ratio_std_error);
  r["corrected_bound"] = number(c.bounds.corrected);
  r["uncorrected_bound"] = number(c.bounds.uncorrected);
  r["rank_relaxed_bound"] = number(c.bounds.rank_relaxed);
  r["dimension_bound"] = number(c.bounds.dimension);
  r["corrected_verdict"] = to_string(c.corrected_verdict);
  r["uncorrected_verdict"] = to_string(c.uncorrected_verdict);
  r["rank_relaxed_verdict"] = to_string(c.rank_relaxed_verdict);
  r["rank"] = c.rank;
  r["spectral"] = number(c.spectral);
  r["frobenius"] = number(c.frobenius);
  if (c.numerator_lower_bound) {
    report.warnings.push_back("numerator is a lower bound; violations are reported as inconclusive");
  }
}

void cmd_fluctuation(const Args& args, Report& report) {
  const VectorMap h = parse_vector_map(load(args, report, "map"), "--map");
  std::vector<double> x = args.has("x") ? args.list("x") : std::vector<double>(h.input_dim(), 0.0);
  FluctuationOptions opt;
  opt.eps_probe = args.num("eps-probe");
  opt.probe = parse_surface(args.str("probe"));
  opt.fd_step = args.num("fd-step");
  opt.budget = budget_from(args);
  const SeededRng rng(args.u64("seed"));
  const auto f = fluctuation_certificate(h, x, args.exponent("p"), args.exponent("q"),
                                         args.count("n"), rng, opt);
  auto& r = report.results;
  r["delta_max"] = number(f.delta_max);
  r["delta_max_kind"] = to_string(f.delta_max_kind);
  r["method"] = f.method;
  r["delta_avg"] = number(f.delta_avg);
  r["delta_avg_std_error"] = number(f.delta_avg_std_error);
  r["ratio"] = number(f.ratio);
  r["ratio_std_error"] = number(f.ratio_std_error);
  r["corrected_bound"] = number(f.corrected_bound);
  r["rank_bound"] = number(f.rank_bound);
  r["dimension_bound"] = number(f.dimension_bound);
  r["eps"] = number(f.eps);
  r["sigma1"] = number(f.sigma1);
  r["frobenius"] = number(f.frobenius);
  r["rank"] = f.rank;
  r["x"] = numbers(f.x);
  r["x_shifted"] = f.x_shifted;
  r["jacobian"] = matrix_json(f.jacobian);
  if (f.x_shifted) report.warnings.push_back("x was nudged away from a relu kink");
  if (opt.probe == Surface::ball) report.warnings.push_back("average rate probed on the unit ball");
}

// --- transport, dro -------------------------------------------------------

void cmd_tv_eps(const Args& args, Report& report) {
  const bool weighted = args.flag("weighted");
  const auto a = parse_sample_csv(load(args, report, "a"), weighted, "--a");
  const auto b = parse_sample_csv(load(args, report, "b"), weighted, "--b");
  const auto model = AttackModel::metric(args.exponent("p"), args.num("eps"));
  std::string method = args.str("method");
  if (method == "auto") method = a.uniform() && b.uniform() ? "matching" : "maxflow";

  TransportResult t;
  if (method == "matching") {
    t = tv_eps_matching(a, b, model);
  } else if (method == "greedy") {
    t = tv_eps_matching(a, b, model, MatchingAlgorithm::greedy_maximal);
    report.warnings.push_back("greedy maximal matching only approximates the maximum matching");
  } else if (method == "maxflow") {
    t = ot_maxflow(a, b, model);
  } else {
    throw UsageError("--method: expected auto, matching, greedy or maxflow");
  }
  auto& r = report.results;
  r["method"] = method;
  r["value"] = number(t.value);
  r["matched_mass"] = number(t.matched_mass);
  r["unmatched_left"] = number(t.unmatched_left);
  r["unmatched_right"] = number(t.unmatched_right);
  if (method != "maxflow") r["matching_size"] = t.matching_size;
  Json plan = Json::array();
  for (const auto& e : t.plan) plan.push_back({e.i, e.j, number(e.mass)});
  r["plan"] = plan;
  if (args.flag("strassen")) r["strassen"] = number(strassen_enumerate(a, b, model));
}

void cmd_dro(const Args& args, Report& report) {
  const std::string lemma = args.str("lemma");
  PwlSolution s;
  auto& r = report.results;
  if (lemma == "opt") {
    const auto c = args.list("c");
    s = solve_opt(args.num("a"), c, args.num("b"));
  } else if (lemma == "optbis") {
    s = solve_optbis(args.list("d"), args.num("eps"));
  } else if (lemma == "realopt") {
    const auto sol = solve_realopt(args.list("a"), args.num("b"), args.num("eps"));
    s = sol;
    r["delta"] = number(sol.delta);
    r["delta_in_range"] = sol.delta_in_range;
  } else {
    throw UsageError("--lemma: expected opt, optbis or realopt");
  }
  r["value"] = number(s.value);
  r["minimizer"] = number(s.minimizer);
  r["closed_form_value"] = s.closed_form_value ? number(*s.closed_form_value) : Json(nullptr);
  r["agrees"] = s.agrees;
  if (!s.agrees) report.warnings.push_back("printed closed form disagrees with the exact minimum");
}

// --- bounds -------------------------------------------------------------------

GaussianPair gaussian_pair(const Args& args, Report& report) {
  GaussianPair pair;
  pair.delta = args.list("delta");
  if (args.has("sigma-matrix")) {
    pair.sigma = parse_matrix_csv(load(args, report, "sigma-matrix"), "--sigma-matrix");
  } else if (args.has("variances")) {
    pair.sigma = args.list("variances");
  } else {
    pair.sigma = std::vector<double>(pair.delta.size(), 1.0);
  }
  return pair;
}

Grid1D theta_grid(const Args& args, Report& report) {
  if (args.has("theta")) {
    const Matrix t = parse_matrix_csv(load(args, report, "theta"), "--theta");
    if (t.cols() != 2) throw UsageError("--theta: expected two columns r,theta");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      xs.push_back(t(i, 0));
      ys.push_back(t(i, 1));
    }
    return Grid1D(std::move(xs), std::move(ys));
  }
  if (!args.has("theta-gaussian")) throw UsageError("kingkong needs --theta or --theta-gaussian");
  const double c = args.num("theta-gaussian");
  if (!(c > 0.0)) throw UsageError("--theta-gaussian: scale must be positive");
  const std::size_t n = args.count("grid-points");
  if (n < 2) throw UsageError("--grid-points: need at least 2");
  const double r_max = args.has("grid-max") ? args.num("grid-max") : 20.0 * c;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = r_max * static_cast<double>(i) / static_cast<double>(n - 1);
    ys[i] = 2.0 * std_normal_cdf(xs[i] / (2.0 * c)) - 1.0;
  }
  return Grid1D(std::move(xs), std::move(ys));
}

Json eval_bound(const std::string& kind, const Args& args, Report& report) {
  Json r = Json::object();
  if (kind == "gaussian") {
    const auto pair = gaussian_pair(args, report);
    const double eps = args.num("eps");
    const auto d = linf_deflation(pair, eps);
    r["bound"] = number(gaussian_err_bound(pair, eps));
    r["delta_eps"] = number(d.delta_eps);
    r["delta_eps_lower"] = number(d.lower);
    r["delta_eps_upper"] = number(d.upper);
    r["exact"] = d.exact;
    r["s_vector"] = numbers(d.s_vector);
    r["z_opt"] = numbers(d.z_opt);
    r["clean_error"] = number(0.5 * (1.0 - gaussian_tv(linf_deflation(pair, 0.0).delta_eps)));
  } else if (kind == "lighttail") {
    const double eps = args.num("eps");
    const double mu = args.num("mu-dist");
    const auto tail = gaussian_linf_tail(args.count("m"), args.num("sigma"));
    r["bound"] = number(tail_moment_bound(LightTail{tail}, eps, mu));
    r["eps_tilde"] = number(0.5 * (eps - mu));
    r["tail_value"] = number(tail(0.5 * (eps - mu)));
  } else if (kind == "moment") {
    const MomentTail k{parse_moment(args.str("moment")), args.num("alpha")};
    r["bound"] = number(tail_moment_bound(k, args.num("eps"), args.num("mu-dist")));
  } else if (kind == "wasserstein") {
    const WassersteinTail k{args.num("w"), args.num("order")};
    r["bound"] = number(tail_moment_bound(k, args.num("eps"), 0.0));
  } else if (kind == "kingkong") {
    const auto grid = theta_grid(args, report);
    r["bound"] = number(kingkong_bound(args.num("t"), parse_moment(args.str("moment")),
                                       args.num("alpha"), args.num("delta-means"), grid));
  } else if (kind == "uap") {
    r["bound"] = number(
        uap_bound(args.num("t"), parse_moment(args.str("moment")), args.num("alpha"), args.num("c")));
  } else if (kind == "noise-design") {
    const Matrix s0 = parse_matrix_csv(load(args, report, "sigma-matrix"), "--sigma-matrix");
    const auto d = noise_design(s0, args.count("r"), args.num("sigma0-sq"), args.num("t"),
                                args.num("delta-means"));
    r["bound"] = number(d.err_lower_bound);
    r["alpha_star"] = number(d.alpha_star);
    r["sigma"] = number(d.sigma);
    r["rank"] = d.rank;
    r["sigma_tilde"] = matrix_json(d.sigma_tilde);
  } else if (kind == "contraction") {
    r["bound"] = number(contraction_constant(args.count("m"), args.exponent("p"), args.num("diam"),
                                             args.num("eps")));
  } else {
    throw UsageError("--kind: unknown bound kind '" + kind + "'");
  }
  return r;
}

void cmd_bounds(const Args& args, Report& report) {
  const std::string kind = args.str("kind");
  if (kind == "uap") {
    report.warnings.push_back("the O(1/m) additive term and the coordinate Kolmogorov-distance "
                              "approximation are omitted");
  }
  if (!args.has("sweep")) {
    report.results = eval_bound(kind, args, report);
    return;
  }
  const std::string& spec = args.str("sweep");
  const auto eq = spec.find('=');
  const auto c1 = spec.find(':', eq == std::string::npos ? 0 : eq);
  const auto c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
  if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos) {
    throw UsageError("--sweep: expected NAME=START:STOP:COUNT");
  }
  const std::string param = spec.substr(0, eq);
  const double lo = parse_double(spec.substr(eq + 1, c1 - eq - 1), "--sweep");
  const double hi = parse_double(spec.substr(c1 + 1, c2 - c1 - 1), "--sweep");
  const double count = parse_double(spec.substr(c2 + 1), "--sweep");
  if (!(count >= 2.0) || count != std::floor(count) || count > 1e6) {
    throw UsageError("--sweep: COUNT must be an integer >= 2");
  }
  const auto n = static_cast<std::size_t>(count);
  Json xs = Json::array(), ys = Json::array();
  Args local = args;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    local.values[param] = fmt(x);
    xs.push_back(number(x));
    ys.push_back(eval_bound(kind, local, report)["bound"]);
  }
  report.results["sweep"] = {{"param", param}, {"values", xs}, {"bound", ys}};
}

OptionSpec opt(std::string name, std::string def, std::string help) {
  return {std::move(name), std::move(def), std::move(help), false, false};
}
OptionSpec req(std::string name, std::string help) {
  return {std::move(name), "", std::move(help), false, true};
}
OptionSpec flag(std::string name, std::string help) {
  return {std::move(name), "", std::move(help), true, false};
}

const std::vector<OptionSpec> kBudget = {
    opt("restarts", "20", "ascent restarts when no closed form applies"),
    opt("iterations", "500", "ascent iterations per restart"),
    opt("tolerance", "1e-10", "ascent relative stopping tolerance"),
};

std::vector<OptionSpec> with_budget(std::vector<OptionSpec> v) {
  v.insert(v.end(), kBudget.begin(), kBudget.end());
  return v;
}

}  // namespace

const std::vector<CommandSpec>& command_table() {
  static const std::vector<CommandSpec> table = {
      {"sphere-sample",
       "Uniform draws from the l_p unit sphere or ball",
       {req("m", "dimension"), opt("p", "2", "exponent (number or inf)"),
        opt("surface", "sphere", "sphere or ball"), opt("n", "10", "number of points"),
        opt("seed", "0", "random seed")},
       cmd_sphere_sample},
      {"sigma2",
       "Per-coordinate variance of the uniform l_p sphere law",
       {req("m", "dimension"), req("p", "exponent (number or inf)")},
       cmd_sigma2},
      {"opnorm",
       "Induced norm ||A||_{p,q}",
       with_budget({req("matrix", "matrix CSV (k rows, m columns)"), opt("p", "2", "domain exponent"),
                    opt("q", "2", "codomain exponent"), opt("seed", "0", "ascent seed")}),
       cmd_opnorm},
      {"and-coeff",
       "Monte Carlo average norm distortion E||Au||_q with its Frobenius bound",
       {req("matrix", "matrix CSV"), opt("p", "2", "domain exponent"),
        opt("q", "2", "codomain exponent(s), comma-separated"), opt("n", "100000", "samples"),
        opt("seed", "0", "random seed")},
       cmd_and_coeff},
      {"ratio-cert",
       "Worst-case over average distortion with its spectral lower bounds",
       with_budget({req("matrix", "matrix CSV"), opt("p", "2", "domain exponent"),
                    opt("q", "2", "codomain exponent"), opt("n", "100000", "samples"),
                    opt("seed", "0", "random seed")}),
       cmd_ratio_cert},
      {"fluctuation",
       "Worst-case against average fluctuation of a layered map at a point",
       with_budget({req("map", "VectorMap JSON"), opt("x", "", "point, comma-separated (default 0)"),
                    opt("p", "2", "domain exponent"), opt("q", "2", "codomain exponent"),
                    opt("n", "100000", "probes"), opt("eps-probe", "1e-4", "probe radius"),
                    opt("probe", "sphere", "sphere or ball"),
                    opt("fd-step", "1e-6", "finite-difference step"),
                    opt("seed", "0", "random seed")}),
       cmd_fluctuation},
      {"tv-eps",
       "Perturbed total variation between two samples",
       {req("a", "first sample CSV"), req("b", "second sample CSV"), req("eps", "attack budget"),
        opt("p", "2", "attack norm exponent"),
        opt("method", "auto", "auto, matching, greedy or maxflow"),
        flag("weighted", "last CSV column holds atom weights"),
        flag("strassen", "also report the subset-enumeration dual (at most 20 atoms in a)")},
       cmd_tv_eps},
      {"dro",
       "Exact piecewise-linear robust risk minimization",
       {req("lemma", "opt, optbis or realopt"), opt("a", "", "opt: slope; realopt: sorted list"),
        opt("b", "", "upper limit / saturation level"), opt("c", "", "opt: sorted list"),
        opt("d", "", "optbis: sorted nonnegative list"), opt("eps", "", "budget")},
       cmd_dro},
      {"bounds",
       "Closed-form lower bounds on the adversarial Bayes error",
       {req("kind", "gaussian, lighttail, moment, wasserstein, kingkong, uap, noise-design, contraction"),
        opt("eps", "", "attack budget"), opt("mu-dist", "0", "distance between class means"),
        opt("delta", "", "gaussian: mean difference, comma-separated"),
        opt("variances", "", "gaussian: diagonal covariance"),
        opt("sigma-matrix", "", "gaussian / noise-design: covariance CSV"),
        opt("m", "", "dimension"), opt("sigma", "", "lighttail: Gaussian scale"),
        opt("moment", "", "power:P or subgaussian:SIGMA"), opt("alpha", "", "moment level"),
        opt("w", "", "wasserstein: distance"), opt("order", "1", "wasserstein: order p"),
        opt("t", "1", "transported mass fraction"), opt("c", "", "uap: per-coordinate scale"),
        opt("delta-means", "0", "distance between means"),
        opt("theta", "", "kingkong: CSV of r,theta"),
        opt("theta-gaussian", "", "kingkong: theta(r) = 2 Phi(r / 2c) - 1 with this c"),
        opt("grid-max", "", "kingkong: grid end for --theta-gaussian (default 20c)"),
        opt("grid-points", "20001", "kingkong: grid size for --theta-gaussian"),
        opt("r", "", "noise-design: rank budget"), opt("sigma0-sq", "", "noise-design: power"),
        opt("p", "", "contraction: 2 or inf"), opt("diam", "", "contraction: domain diameter"),
        opt("sweep", "", "NAME=START:STOP:COUNT")},
       cmd_bounds},
  };
  return table;
}

}  // namespace specbound::cli
