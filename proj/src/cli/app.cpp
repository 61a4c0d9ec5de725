#include "n32/cli.hpp"

#include "n32/geodesy.hpp"
#include "n32/kernel.hpp"
#include "n32/parallel.hpp"
#include "n32/sampler.hpp"
#include "n32/suites.hpp"
#include "n32/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>

#ifndef N32_VERSION
#define N32_VERSION "0.0.0"
#endif

namespace n32::cli {

const char* version() { return N32_VERSION; }

namespace {

struct Outcome {
  Json result;
  int code = kOk;
};

struct Global {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  std::string csv;
};

struct Quad {
  double radius = 90;
  int nodes = 16;
  double tolerance = 1e-9;
  std::string scheme = "spherical_bessel";

  kernel::QuadratureSpec spec() const
  {
    kernel::QuadratureSpec s;
    s.truncation_radius = radius;
    s.nodes_per_axis = nodes;
    s.tolerance = tolerance;
    s.scheme = kernel::scheme_from_string(scheme);
    return s;
  }
};

void add_quad(CLI::App* a, Quad& q)
{
  a->add_option("--radius", q.radius, "Fourier truncation radius")->capture_default_str();
  a->add_option("--nodes", q.nodes, "Gauss-Legendre nodes per panel and axis")->capture_default_str();
  a->add_option("--tolerance", q.tolerance, "convergence gate, relative to p1_raw(0)")->capture_default_str();
  a->add_option("--scheme", q.scheme, "spherical_bessel or tensor_gl")->capture_default_str();
}

Json point_json(const Point6& g)
{
  Json a = Json::array();
  for (std::size_t k = 0; k < 6; ++k)
    a.push_back(g[k]);
  return a;
}

Point6 point_from(const std::vector<double>& x, const std::vector<double>& y)
{
  Point6 g;
  for (std::size_t i = 0; i < 3; ++i) {
    g.x[i] = x.at(i);
    g.y[i] = y.at(i);
  }
  return g;
}

Json stat_json(const sampler::Stat& s) { return {{"mean", s.mean}, {"stderr", s.stderr_}}; }

Json moments_json(const sampler::Moments& m)
{
  return {{"n", m.n},          {"r1", stat_json(m.r1)},     {"r2", stat_json(m.r2)},
          {"z", stat_json(m.z)}, {"r1^2", stat_json(m.r1sq)}, {"r2^2", stat_json(m.r2sq)},
          {"z^2", stat_json(m.zsq)}};
}

Json estimate_json(const kernel::MeanEstimate& e) { return {{"mean", e.mean}, {"stderr", e.stderr_}}; }

// ---- algebra / radial -------------------------------------------------------

Outcome suites_outcome(const std::vector<suites::SuiteResult>& rs)
{
  Outcome o;
  o.result["suites"] = Json::array();
  bool ok = true;
  for (const auto& r : rs) {
    o.result["suites"].push_back(suites::to_json(r));
    ok = ok && r.passed;
  }
  o.result["passed"] = ok;
  o.code = ok ? kOk : kViolation;
  return o;
}

// ---- kernel -------------------------------------------------------------

Outcome kernel_eval(const Quad& q, double t, const Point6& g, bool raw, bool gradient)
{
  const auto spec = q.spec();
  Outcome o;
  o.result["point"] = point_json(g);
  if (raw) {
    const auto j = gradient ? kernel::p1_raw_jet(g.x, g.y, spec) : kernel::KernelJet{kernel::p1_raw(g.x, g.y, spec), {}};
    o.result["p1_raw"] = j.value.value;
    o.result["imag_leak"] = j.value.imag_leak;
    o.result["abs_mass"] = j.value.abs_mass;
    if (gradient)
      o.result["gradient"] = j.grad;
    return o;
  }
  o.result["t"] = t;
  o.result["p_t"] = kernel::p_t(t, g, spec);
  if (gradient) {
    o.result["gradient"] = kernel::grad_p_t(t, g, spec);
    const auto hg = kernel::horiz_grad_log_pt(t, g, spec);
    o.result["X_log_p"] = hg.X;
    o.result["Y_log_p"] = hg.Y;
  }
  return o;
}

Outcome kernel_scan(const Quad& q, const std::vector<double>& ts, int n, std::uint64_t seed, double scale)
{
  const auto spec = q.spec();
  kernel::require_converged(spec);
  auto pts = verify::gauge_sphere_points(n, seed);
  for (auto& g : pts)
    g = dilate(scale, g);
  struct Row {
    double t = 0, p = 0, heat = 0, scaled = 0;
    Point6 g;
    std::string error;
  };
  std::vector<Row> rows(ts.size() * pts.size());
  parallel_for(rows.size(), [&](std::size_t k) {
    Row& r = rows[k];
    r.t = ts[k / pts.size()];
    r.g = pts[k % pts.size()];
    try {
      r.p = kernel::p_t(r.t, r.g, spec);
      r.heat = kernel::heat_residual(r.t, r.g, spec);
      // p_{4t}(delta_2 g) = 2^{-9} p_t(g)
      r.scaled = std::abs(std::pow(2.0, 9) * kernel::p_t(4 * r.t, dilate(2.0, r.g), spec) / r.p - 1);
    } catch (const UnderflowError& e) {
      r.error = e.what();
    }
  });
  Outcome o;
  o.result["rows"] = Json::array();
  double worst_heat = 0, worst_scale = 0;
  for (const auto& r : rows) {
    Json j = {{"t", r.t}, {"g", point_json(r.g)}};
    if (!r.error.empty()) {
      j["error"] = r.error;
    } else {
      j["p_t"] = r.p;
      j["heat_residual"] = r.heat;
      j["scaling_rel_error"] = r.scaled;
      worst_heat = std::max(worst_heat, r.heat);
      worst_scale = std::max(worst_scale, r.scaled);
    }
    o.result["rows"].push_back(j);
  }
  o.result["max_heat_residual"] = worst_heat;
  o.result["max_scaling_rel_error"] = worst_scale;
  return o;
}

Outcome kernel_normalization(const Quad& q, std::size_t samples, std::uint64_t seed)
{
  kernel::NormalizationOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  opt.spec = q.spec();
  const auto r = kernel::normalization(opt);
  Outcome o;
  o.result = {{"samples", r.samples},
              {"seed", r.seed},
              {"raw_integral", estimate_json(r.raw_integral)},
              {"exact_raw_integral", kernel::raw_total_mass()},
              {"ratio_to_exact", estimate_json(r.ratio_to_exact)},
              {"p1_mass", estimate_json(r.mass)},
              {"p1_E_r1", estimate_json(r.r1)},
              {"p1_E_r2", estimate_json(r.r2)},
              {"p1_E_z", estimate_json(r.z)}};
  const double z = std::abs(r.ratio_to_exact.mean - 1) / r.ratio_to_exact.stderr_;
  o.result["ratio_zscore"] = z;
  o.code = z <= 3 ? kOk : kViolation;
  return o;
}

Outcome kernel_constants(const Quad& q)
{
  const auto spec = q.spec();
  const auto w = kernel::constants_W(spec);
  const double pi5 = std::pow(kernel::kPi, 5);
  const double p0 = kernel::p1_raw({0, 0, 0}, {0, 0, 0}, spec).value;
  Outcome o;
  o.result = {{"p1_raw_origin", p0},
              {"p1_raw_origin_exact", kernel::raw_value_at_origin()},
              {"W1", w.W1},
              {"W1_exact", 8 * pi5},
              {"W2", w.W2},
              {"W2_exact", 64 * pi5}};
  const double e = std::max({std::abs(p0 / kernel::raw_value_at_origin() - 1), std::abs(w.W1 / (8 * pi5) - 1),
                             std::abs(w.W2 / (64 * pi5) - 1)});
  o.result["max_rel_error"] = e;
  o.code = e <= 1e-6 ? kOk : kViolation;
  return o;
}

// ---- sim ----------------------------------------------------------------

sampler::SimConfig sim_config(double t, double dt, std::size_t paths, std::uint64_t seed)
{
  return {.t = t, .dt = dt, .n_paths = paths, .seed = seed};
}

Outcome sim_run(const sampler::SimConfig& cfg, unsigned threads, const std::string& samples_csv)
{
  const auto b = sampler::simulate(cfg, threads);
  Outcome o;
  o.result = {{"t", cfg.t},          {"dt_used", b.dt_used},  {"steps", b.steps},
              {"paths", cfg.n_paths}, {"dt_adjusted", b.dt_adjusted}, {"stream", sampler::kStreamRule},
              {"moments", moments_json(b.moments)}};
  if (!samples_csv.empty()) {
    std::ofstream f(samples_csv);
    if (!f)
      throw std::invalid_argument("cannot write " + samples_csv);
    f.precision(17);
    f << "x1,x2,x3,y1,y2,y3\n";
    for (const auto& g : b.samples)
      f << g[0] << ',' << g[1] << ',' << g[2] << ',' << g[3] << ',' << g[4] << ',' << g[5] << '\n';
    o.result["samples_csv"] = samples_csv;
  }
  return o;
}

Outcome sim_moments(const sampler::SimConfig& cfg, unsigned threads, const std::vector<double>& lambdas)
{
  const auto b = sampler::simulate(cfg, threads);
  const double t = cfg.t;
  // continuum targets; the scheme's own E r2 is 3 t (t - dt), reported alongside
  const std::vector<std::tuple<std::string, sampler::Stat, double>> rows = {
      {"r1", b.moments.r1, 6 * t}, {"r2", b.moments.r2, 3 * t * t}, {"z", b.moments.z, 0.0}};
  Outcome o;
  o.result["moments"] = moments_json(b.moments);
  o.result["dt_used"] = b.dt_used;
  o.result["scheme_E_r2"] = 3 * t * (t - b.dt_used);
  o.result["checks"] = Json::array();
  bool ok = true;
  for (const auto& [name, s, target] : rows) {
    const double z = (s.mean - target) / s.stderr_;
    ok = ok && std::abs(z) <= 3;
    o.result["checks"].push_back({{"moment", name}, {"estimate", stat_json(s)}, {"target", target}, {"zscore", z}});
  }
  o.result["dilation"] = Json::array();
  for (double lam : lambdas) {
    const auto d = sampler::dilation_distribution_check(cfg, lam, threads);
    Json j = {{"lambda", lam}, {"passed", d.passed}, {"identical", d.identical}, {"comparisons", Json::array()}};
    for (const auto& c : d.comparisons)
      j["comparisons"].push_back({{"moment", c.name}, {"pushed", stat_json(c.a)}, {"fresh", stat_json(c.b)}, {"zscore", c.zscore}});
    ok = ok && d.passed;
    o.result["dilation"].push_back(j);
  }
  o.result["passed"] = ok;
  o.code = ok ? kOk : kViolation;
  return o;
}

Outcome sim_compare(const sampler::SimConfig& cfg, unsigned threads, const Quad& q, int bootstrap, double bw,
                    double tolerance)
{
  const auto b = sampler::simulate(cfg, threads);
  sampler::KdeOptions opt;
  opt.bootstrap = bootstrap;
  opt.bandwidth_scale = bw;
  opt.spec = q.spec();
  std::vector<Point6> pts;
  for (const auto& g : sampler::default_bulk_points())
    pts.push_back(dilate(std::sqrt(cfg.t), g));
  const auto r = sampler::kde_compare(b, pts, opt);
  Outcome o;
  o.result = {{"t", r.t}, {"paths", cfg.n_paths}, {"bandwidth", r.bandwidth}, {"points", Json::array()}};
  for (const auto& p : r.points)
    o.result["points"].push_back({{"r1", p.r1},
                                  {"r2", p.r2},
                                  {"z", p.z},
                                  {"kernel_density", p.kernel_density},
                                  {"kde", p.kde},
                                  {"rel_discrepancy", p.rel_discrepancy},
                                  {"ci95", {p.ci_lo, p.ci_hi}},
                                  {"sparse", p.sparse}});
  o.result["max_abs_discrepancy"] = r.max_abs_discrepancy;
  o.result["tolerance"] = tolerance;
  o.code = r.max_abs_discrepancy <= tolerance ? kOk : kViolation;
  return o;
}

// ---- dist ---------------------------------------------------------------

Json distance_json(const geodesy::Distance& d)
{
  return {{"d", d.d},
          {"status", geodesy::to_string(d.status)},
          {"lower", d.bounds.lower},
          {"upper", d.bounds.upper},
          {"solutions", d.solutions},
          {"agreeing", d.agreeing}};
}

Outcome dist_eval(const Point6& g, int restarts)
{
  const auto d = geodesy::cc_distance(g, restarts);
  Outcome o;
  o.result = distance_json(d);
  o.result["point"] = point_json(g);
  o.code = d.status == geodesy::Status::degraded ? kNonConvergence : kOk;
  return o;
}

Outcome dist_scan(int n, std::uint64_t seed, int restarts)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<Point6> pts(static_cast<std::size_t>(n));
  for (auto& g : pts)
    for (std::size_t k = 0; k < 6; ++k)
      g[k] = nd(rng);
  std::vector<geodesy::Distance> ds(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) { ds[k] = geodesy::cc_distance(pts[k], restarts); });
  Outcome o;
  o.result["rows"] = Json::array();
  int violations = 0, degraded = 0;
  double lo = INFINITY, hi = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& d = ds[k];
    const double gauge = std::pow(std::pow(norm(pts[k].x), 4) + dot(pts[k].y, pts[k].y), 0.25);
    Json j = distance_json(d);
    j["point"] = point_json(pts[k]);
    j["gauge_ratio"] = d.d / gauge;
    o.result["rows"].push_back(j);
    violations += d.d < d.bounds.lower * (1 - 1e-12) || d.d > d.bounds.upper * (1 + 1e-12);
    degraded += d.status == geodesy::Status::degraded;
    lo = std::min(lo, d.d / gauge);
    hi = std::max(hi, d.d / gauge);
  }
  o.result["sandwich_violations"] = violations;
  o.result["degraded"] = degraded;
  o.result["gauge_ratio_range"] = {lo, hi};
  o.code = violations ? kViolation : (degraded ? kNonConvergence : kOk);
  return o;
}

// ---- verify -------------------------------------------------------------

void write_csv(const verify::VerifyReport& r, const std::string& path)
{
  std::ofstream f(path);
  if (!f)
    throw std::invalid_argument("cannot write " + path);
  f.precision(17);
  f << "label,t,x1,x2,x3,y1,y2,y3,lhs,rhs,value,stderr,verdict\n";
  for (const auto& p : r.points) {
    f << '"' << p.label << "\"," << p.t;
    for (std::size_t k = 0; k < 6; ++k)
      f << ',' << p.g[k];
    f << ',' << p.lhs << ',' << p.rhs << ',' << p.value << ',' << p.stderr_ << ',' << p.verdict << '\n';
  }
}

Outcome report_outcome(const verify::VerifyReport& r, const std::string& csv)
{
  if (!csv.empty())
    write_csv(r, csv);
  Outcome o;
  o.result = verify::to_json(r);
  o.code = r.passed ? kOk : kViolation;
  return o;
}

std::vector<Point6> grid_points(int n, std::uint64_t seed, const std::vector<double>& scales)
{
  const auto base = verify::gauge_sphere_points(n, seed);
  std::vector<Point6> out;
  for (double s : scales)
    for (const auto& g : base)
      out.push_back(dilate(s, g));
  return out;
}

// ---- manifest -----------------------------------------------------------

Json manifest(const std::vector<std::string>& args, const std::string& command, const Global& g, const CLI::App& app,
              double seconds, int code)
{
  Json m;
  m["tool"] = "n32";
  m["version"] = version();
  m["command"] = command;
  m["argv"] = args;
  m["seed"] = g.seed;
  m["threads"] = thread_budget();
  m["config"] = app.config_to_str(true, false);
  m["versions"] = {{"cli11", CLI11_VERSION},
                   {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                   {"compiler", __VERSION__},
                   {"cplusplus", __cplusplus}};
  m["sampler_stream"] = sampler::kStreamRule;
  m["seconds"] = seconds;
  m["exit_code"] = code;
  return m;
}

} // namespace

int run(const std::vector<std::string>& args)
{
  CLI::App app{"Toolkit for the sub-Laplacian on the free step-two group N(3,2)", "n32"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option values");

  Global g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads, 0 = all cores")->capture_default_str();
  app.add_option("--out", g.out, "write the JSON result here (manifest goes to <out>.manifest.json)");
  app.add_option("--csv", g.csv, "CSV extract of per-point records (verify)");

  std::function<Outcome()> action;
  std::string command;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* s = parent->add_subcommand(name, help);
    return s;
  };
  auto bind = [&](CLI::App* s, std::string cmd, std::function<Outcome()> fn) {
    s->callback([&action, &command, cmd = std::move(cmd), fn = std::move(fn)] {
      command = cmd;
      action = fn;
    });
  };

  // algebra / radial
  auto* alg = app.add_subcommand("algebra", "exact identities of the Lie algebra")->require_subcommand(1);
  std::vector<int> degrees{2, 3, 4};
  int gap_triples = 10000;
  auto* alg_check = leaf(alg, "check", "bracket table, operator tables, commutant, curvature-dimension gap");
  alg_check->add_option("--degrees", degrees, "commutant coefficient degrees")->delimiter(',')->capture_default_str();
  alg_check->add_option("--triples", gap_triples, "random (f, lambda, point) triples")->capture_default_str();
  bind(alg_check, "algebra check", [&] {
    return suites_outcome({suites::bracket_table(), suites::radial_tables(), suites::commutant(degrees),
                           suites::cd_gap(gap_triples, g.seed)});
  });

  auto* rad = app.add_subcommand("radial", "radial reduction")->require_subcommand(1);
  int pairs = 1000, inputs = 10000;
  auto* rad_check = leaf(rad, "check", "SOS identities, nine equations, agreement of both proofs");
  rad_check->add_option("--pairs", pairs, "random (polynomial, point) pairs")->capture_default_str();
  rad_check->add_option("--inputs", inputs, "random inputs for Gamma2 >= 0")->capture_default_str();
  bind(rad_check, "radial check", [&] {
    return suites_outcome({suites::formal_identities(), suites::reduction_consistency(pairs, g.seed),
                           suites::first_proof(pairs, g.seed), suites::nine_equations(std::min(pairs, 200), g.seed),
                           suites::gamma2_nonnegative(inputs, g.seed)});
  });

  // kernel
  auto* ker = app.add_subcommand("kernel", "heat kernel by Fourier quadrature")->require_subcommand(1);
  Quad quad;
  std::vector<double> px{0, 0, 0}, py{0, 0, 0};
  double kt = 1;
  bool raw = false, gradient = false;
  auto* k_eval = leaf(ker, "eval", "p_t or the raw integral at one point");
  add_quad(k_eval, quad);
  k_eval->add_option("--x", px, "x1,x2,x3")->delimiter(',')->expected(3)->capture_default_str();
  k_eval->add_option("--y", py, "y1,y2,y3")->delimiter(',')->expected(3)->capture_default_str();
  k_eval->add_option("--t", kt, "time")->capture_default_str();
  k_eval->add_flag("--raw", raw, "evaluate the printed integral p1_raw(x, y) instead of p_t");
  k_eval->add_flag("--gradient", gradient, "also the Euclidean and horizontal/vertical log gradients");
  bind(k_eval, "kernel eval", [&] { return kernel_eval(quad, kt, point_from(px, py), raw, gradient); });

  std::vector<double> ts{0.5, 1, 2};
  int npts = 20;
  double scale = 1;
  auto* k_scan = leaf(ker, "scan", "values, heat-equation residuals and scaling on gauge-sphere points");
  add_quad(k_scan, quad);
  k_scan->add_option("--t", ts, "times")->delimiter(',')->capture_default_str();
  k_scan->add_option("--points", npts, "gauge-sphere points")->capture_default_str();
  k_scan->add_option("--scale", scale, "dilate the points by this factor")->capture_default_str();
  bind(k_scan, "kernel scan", [&] { return kernel_scan(quad, ts, npts, g.seed, scale); });

  std::size_t norm_samples = 2000;
  Quad nquad{70, 12, 1e-6};
  auto* k_norm = leaf(ker, "audit-normalization", "importance-sampling estimate of the integral of p1_raw");
  add_quad(k_norm, nquad);
  k_norm->add_option("--samples", norm_samples, "importance samples")->capture_default_str();
  bind(k_norm, "kernel audit-normalization", [&] { return kernel_normalization(nquad, norm_samples, g.seed); });

  auto* k_const = leaf(ker, "constants", "p1_raw(0) and the constants W1, W2");
  add_quad(k_const, quad);
  bind(k_const, "kernel constants", [&] { return kernel_constants(quad); });

  // sim
  auto* sim = app.add_subcommand("sim", "Monte Carlo of the diffusion")->require_subcommand(1);
  double st = 1, sdt = 1e-3;
  std::size_t paths = 100000;
  std::string samples_csv;
  std::vector<double> lambdas{0.5, 2};
  auto sim_opts = [&](CLI::App* s) {
    s->add_option("--t", st, "time")->capture_default_str();
    s->add_option("--dt", sdt, "step")->capture_default_str();
    s->add_option("--paths", paths, "number of paths")->capture_default_str();
  };
  auto* s_run = leaf(sim, "run", "simulate and summarize a batch");
  sim_opts(s_run);
  s_run->add_option("--samples-csv", samples_csv, "dump the endpoints");
  bind(s_run, "sim run", [&] { return sim_run(sim_config(st, sdt, paths, g.seed), g.threads, samples_csv); });

  auto* s_mom = leaf(sim, "moments", "moment identities and the dilation distribution check");
  sim_opts(s_mom);
  s_mom->add_option("--lambda", lambdas, "dilation factors")->delimiter(',')->capture_default_str();
  bind(s_mom, "sim moments", [&] { return sim_moments(sim_config(st, sdt, paths, g.seed), g.threads, lambdas); });

  int bootstrap = 200;
  double bw = 2.0, kde_tol = 0.05;
  Quad cquad;
  auto* s_cmp = leaf(sim, "compare-kernel", "KDE of the radial coordinates against the quadrature kernel");
  sim_opts(s_cmp);
  add_quad(s_cmp, cquad);
  s_cmp->add_option("--bootstrap", bootstrap, "bootstrap resamples")->capture_default_str();
  s_cmp->add_option("--bandwidth-scale", bw, "multiple of Scott's rule")->capture_default_str();
  s_cmp->add_option("--max-discrepancy", kde_tol, "relative tolerance")->capture_default_str();
  bind(s_cmp, "sim compare-kernel",
       [&] { return sim_compare(sim_config(st, sdt, paths, g.seed), g.threads, cquad, bootstrap, bw, kde_tol); });

  // dist
  auto* dist = app.add_subcommand("dist", "Carnot-Caratheodory distance")->require_subcommand(1);
  int restarts = 64, dist_n = 100;
  auto* d_eval = leaf(dist, "eval", "distance from the origin with bounds");
  d_eval->add_option("--x", px, "x1,x2,x3")->delimiter(',')->expected(3)->capture_default_str();
  d_eval->add_option("--y", py, "y1,y2,y3")->delimiter(',')->expected(3)->capture_default_str();
  d_eval->add_option("--restarts", restarts, "shooting restarts")->capture_default_str();
  bind(d_eval, "dist eval", [&] { return dist_eval(point_from(px, py), restarts); });
  auto* d_scan = leaf(dist, "scan", "random points: sandwich bounds and gauge ratios");
  d_scan->add_option("--points", dist_n, "number of points")->capture_default_str();
  d_scan->add_option("--restarts", restarts, "shooting restarts")->capture_default_str();
  bind(d_scan, "dist scan", [&] { return dist_scan(dist_n, g.seed, restarts); });

  // verify
  auto* ver = app.add_subcommand("verify", "empirical audits of the functional inequalities")->require_subcommand(1);
  std::vector<double> vts{0.25, 1, 4};
  int grid_n = 50;
  std::vector<double> grid_scales{1};
  Quad vquad;
  verify::McConfig mc;
  double vt = 1;
  std::vector<double> gx{0, 0, 0}, gy{0, 0, 0};
  auto kernel_audit = [&](CLI::App* s) {
    add_quad(s, vquad);
    s->add_option("--t", vts, "times")->delimiter(',')->capture_default_str();
    s->add_option("--grid", grid_n, "gauge-sphere points")->capture_default_str();
    s->add_option("--grid-scales", grid_scales, "dilations of the gauge sphere")->delimiter(',')->capture_default_str();
  };
  auto mc_audit = [&](CLI::App* s) {
    s->add_option("--t", vt, "time")->capture_default_str();
    s->add_option("--paths", mc.n_paths, "paths")->capture_default_str();
    s->add_option("--dt", mc.dt, "sampler step")->capture_default_str();
    s->add_option("--eps", mc.eps, "finite-difference step over sqrt t")->capture_default_str();
  };
  auto* v_grad = leaf(ver, "gradient", "t sqrt(Gamma(log p_t)) / d over a grid");
  kernel_audit(v_grad);
  bind(v_grad, "verify gradient", [&] {
    verify::GradientScanOptions opt;
    opt.spec = vquad.spec();
    return report_outcome(verify::gradient_ratio_scan(vts, grid_points(grid_n, g.seed, grid_scales), opt), g.csv);
  });
  auto* v_har = leaf(ver, "harnack", "fit of the Harnack constants (A1, A2)");
  kernel_audit(v_har);
  bind(v_har, "verify harnack", [&] {
    const auto pts = grid_points(grid_n, g.seed, grid_scales);
    return report_outcome(verify::harnack_fit(verify::harnack_samples(vts, pts), vquad.spec()), g.csv);
  });
  auto* v_ly = leaf(ver, "liyau", "feasible (C1, C2, C3) on a constants grid");
  kernel_audit(v_ly);
  bind(v_ly, "verify liyau", [&] {
    return report_outcome(verify::li_yau_scan(vts, grid_points(grid_n, g.seed, grid_scales), {}, vquad.spec()), g.csv);
  });
  auto* v_dm = leaf(ver, "dm", "Gamma(P_t f) / P_t Gamma(f) at the origin over the polynomial family");
  mc_audit(v_dm);
  bind(v_dm, "verify dm", [&] {
    mc.seed = g.seed;
    return report_outcome(verify::driver_melcher_ratio(verify::default_polynomial_family(), vt, mc), g.csv);
  });
  auto* v_rp = leaf(ver, "rpoincare", "reverse local Poincare gaps at the origin");
  mc_audit(v_rp);
  bind(v_rp, "verify rpoincare", [&] {
    mc.seed = g.seed;
    return report_outcome(verify::reverse_poincare_gap(verify::default_polynomial_family(), vt, mc), g.csv);
  });
  auto* v_ri = leaf(ver, "radial-ineq", "the three radial inequality gaps on windowed radial functions");
  mc_audit(v_ri);
  v_ri->add_option("--x", gx, "base point x")->delimiter(',')->expected(3)->capture_default_str();
  v_ri->add_option("--y", gy, "base point y")->delimiter(',')->expected(3)->capture_default_str();
  bind(v_ri, "verify radial-ineq", [&] {
    mc.seed = g.seed;
    return report_outcome(verify::radial_inequality_gaps(verify::default_radial_family(), vt, point_from(gx, gy), mc),
                          g.csv);
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  set_thread_budget(g.threads);
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = action();
  } catch (const ConvergenceError& e) {
    o.result = {{"error", "non-convergence"}, {"message", e.what()}};
    o.code = kNonConvergence;
  } catch (const UnderflowError& e) {
    o.result = {{"error", "underflow"}, {"message", e.what()}};
    o.code = kNonConvergence;
  } catch (const ViolationError& e) {
    o.result = {{"error", "violation"}, {"message", e.what()}};
    o.code = kViolation;
  } catch (const std::invalid_argument& e) {
    o.result = {{"error", "invalid input"}, {"message", e.what()}};
    o.code = kUsage;
  } catch (const std::domain_error& e) {
    o.result = {{"error", "invalid input"}, {"message", e.what()}};
    o.code = kUsage;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const Json man = manifest(args, command, g, app, secs, o.code);

  if (o.code != kOk && o.result.contains("error"))
    std::cerr << "n32 " << command << ": " << o.result["message"].get<std::string>() << '\n';
  if (g.out.empty()) {
    o.result["manifest"] = man;
    std::cout << o.result.dump(2) << '\n';
  } else {
    std::ofstream f(g.out);
    std::ofstream m(g.out + ".manifest.json");
    if (!f || !m) {
      std::cerr << "n32: cannot write " << g.out << '\n';
      return kUsage;
    }
    f << o.result.dump(2) << '\n';
    m << man.dump(2) << '\n';
  }
  return o.code;
}

int run(int argc, const char* const* argv)
{
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i)
    args.emplace_back(argv[i]);
  return run(args);
}

} // namespace n32::cli
