// Monte Carlo semigroup and the Monte Carlo audits.
//
// All estimators are smooth functionals of per-path columns; standard errors
// come from a grouped jackknife so nonlinear ones (ratios, variances, plug-in
// Gamma) get honest error bars.

#include "n32/parallel.hpp"
#include "n32/parse.hpp"
#include "n32/sampler.hpp"
#include "n32/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace n32::verify {

TestFunction from_polynomial(const algebra::MultiPoly& f, std::string name)
{
  TestFunction tf;
  tf.name = std::move(name);
  tf.radial = algebra::is_radial(f);
  tf.value = [f](const Point6& g) {
    const auto a = g.to_array();
    return f.evaluate(std::span<const double, 6>(a));
  };
  const auto gam = algebra::gamma(f, f);
  tf.gamma = [gam](const Point6& g) {
    const auto a = g.to_array();
    return gam.evaluate(std::span<const double, 6>(a));
  };
  return tf;
}

TestFunction radial_window(const radial::RadialPoly& F, double offset, double radius, std::string name)
{
  if (!(radius > 0))
    throw std::invalid_argument("radial_window: radius must be positive");
  TestFunction tf;
  tf.name = std::move(name);
  tf.radial = true;
  const double R4 = std::pow(radius, 4);
  const std::array<radial::RadialPoly, 3> dF = {F.derivative(0), F.derivative(1), F.derivative(2)};
  auto parts = [F, dF, offset, R4](const Point6& g, radial::RadialJet<double>& j, double& v) {
    const auto p = radial::radial_coords(g);
    j = {};
    v = 0;
    const double q = (p.r1 * p.r1 + p.r2) / R4;
    if (q >= 1)
      return p;
    const std::array<double, 3> a = {p.r1, p.r2, p.z};
    auto ev = [&](const radial::RadialPoly& P) { return P.evaluate(std::span<const double, 3>(a)); };
    const double w = std::exp(1 - 1 / (1 - q));
    const double dw = -w / ((1 - q) * (1 - q)); // d bump / dq
    const double base = offset + ev(F);
    v = base * w;
    j.f1 = ev(dF[0]) * w + base * dw * 2 * p.r1 / R4;
    j.f2 = ev(dF[1]) * w + base * dw / R4;
    j.fz = ev(dF[2]) * w;
    return p;
  };
  tf.value = [parts](const Point6& g) {
    radial::RadialJet<double> j;
    double v;
    parts(g, j, v);
    return v;
  };
  tf.gamma = [parts](const Point6& g) {
    radial::RadialJet<double> j;
    double v;
    const auto p = parts(g, j, v);
    return std::max(0.0, radial::gammahat(j, j, p));
  };
  return tf;
}

namespace {

/// Group sums of per-path columns for leave-one-group-out means.
struct Columns {
  int K;
  std::size_t n;
  std::vector<std::vector<double>> sum; // [col][group]
  std::vector<double> count;            // [group]

  Columns(int k, std::size_t n_) : K(k), n(n_), count(static_cast<std::size_t>(k), 0.0)
  {
    for (std::size_t i = 0; i < n; ++i)
      count[i % K] += 1;
  }

  int add(const std::vector<double>& v)
  {
    std::vector<double> s(static_cast<std::size_t>(K), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
      s[i % K] += v[i];
    sum.push_back(std::move(s));
    return static_cast<int>(sum.size()) - 1;
  }

  double mean(int col, int excl) const
  {
    double s = 0, c = 0;
    for (int k = 0; k < K; ++k) {
      if (k == excl)
        continue;
      s += sum[col][k];
      c += count[k];
    }
    return s / c;
  }
};

template <class F>
Estimate jackknife(int K, F est)
{
  const double full = est(-1);
  std::vector<double> loo(static_cast<std::size_t>(K));
  double m = 0;
  for (int k = 0; k < K; ++k)
    m += loo[k] = est(k);
  m /= K;
  double s = 0;
  for (double v : loo)
    s += (v - m) * (v - m);
  return {full, std::sqrt((K - 1.0) / K * s)};
}

bool heavy(const std::vector<double>& v)
{
  double s = 0, mx = 0;
  for (double a : v) {
    if (!std::isfinite(a))
      return true;
    s += a * a;
    mx = std::max(mx, a * a);
  }
  return v.size() > 10 && s > 0 && mx > 0.5 * s;
}

/// Per-path data of f around g for one batch.
struct PathData {
  Columns cols;
  int v = -1;
  std::array<int, 3> d{-1, -1, -1}, dh{-1, -1, -1};
  std::vector<double> fv; // f(g o G) per path
  double eps = 0;
  bool flag = false;
};

PathData collect(const TestFunction& f, const Point6& g, double t, const std::vector<Point6>& G, const McConfig& cfg,
                 bool derivatives)
{
  PathData pd{Columns(cfg.groups, G.size()), -1, {-1, -1, -1}, {-1, -1, -1}, {}, 0, false};
  const std::size_t n = G.size();
  pd.fv.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    pd.fv[i] = f.value(multiply(g, G[i]));
  pd.v = pd.cols.add(pd.fv);
  pd.flag = heavy(pd.fv);
  if (!derivatives)
    return pd;
  pd.eps = cfg.eps * std::sqrt(t);
  for (std::size_t a = 0; a < 3; ++a) {
    for (int half = 0; half < 2; ++half) {
      const double e = half ? pd.eps / 2 : pd.eps;
      std::array<double, 3> v{};
      v[a] = e;
      const Point6 gp = multiply(g, horizontal(v));
      v[a] = -e;
      const Point6 gm = multiply(g, horizontal(v));
      std::vector<double> diff(n);
      for (std::size_t i = 0; i < n; ++i)
        diff[i] = (f.value(multiply(gp, G[i])) - f.value(multiply(gm, G[i]))) / (2 * e);
      pd.flag = pd.flag || heavy(diff);
      (half ? pd.dh[a] : pd.d[a]) = pd.cols.add(diff);
    }
  }
  return pd;
}

double gamma_of(const PathData& pd, int excl)
{
  double s = 0;
  for (std::size_t a = 0; a < 3; ++a) {
    const double m = pd.cols.mean(pd.d[a], excl);
    s += m * m;
  }
  return s;
}

SemigroupResult summarize(const PathData& pd, int K, bool derivatives)
{
  SemigroupResult r;
  r.value = jackknife(K, [&](int e) { return pd.cols.mean(pd.v, e); });
  r.variance_flag = pd.flag;
  r.eps = pd.eps;
  if (!derivatives)
    return r;
  for (std::size_t a = 0; a < 3; ++a) {
    r.X[a] = jackknife(K, [&](int e) { return pd.cols.mean(pd.d[a], e); });
    const auto shift = jackknife(K, [&](int e) { return pd.cols.mean(pd.d[a], e) - pd.cols.mean(pd.dh[a], e); });
    const double s = std::abs(shift.value);
    const double rel = r.X[a].stderr_ > 0 ? s / r.X[a].stderr_ : (s > 1e-12 ? INFINITY : 0.0);
    r.fd_halving_shift = std::max(r.fd_halving_shift, rel);
  }
  r.gamma = jackknife(K, [&](int e) { return gamma_of(pd, e); });
  return r;
}

std::vector<Point6> batch_for(double t, const McConfig& cfg)
{
  if (cfg.groups < 2)
    throw std::invalid_argument("McConfig: need at least 2 jackknife groups");
  if (cfg.n_paths < static_cast<std::size_t>(cfg.groups))
    throw std::invalid_argument("McConfig: fewer paths than jackknife groups");
  if (!(cfg.eps > 0))
    throw std::invalid_argument("McConfig: eps must be positive");
  return sampler::simulate({.t = t, .dt = cfg.dt, .n_paths = cfg.n_paths, .seed = cfg.seed}).samples;
}

void fill_mc_tolerances(VerifyReport& r, double t, const McConfig& cfg)
{
  r.tolerances["t"] = t;
  r.tolerances["n_paths"] = static_cast<double>(cfg.n_paths);
  r.tolerances["dt"] = cfg.dt;
  r.tolerances["seed"] = static_cast<double>(cfg.seed);
  r.tolerances["fd_eps"] = cfg.eps * std::sqrt(t);
  r.tolerances["jackknife_groups"] = cfg.groups;
  r.tolerances["violation_threshold_stderr"] = 3;
}

void record_gap(VerifyReport& r, PointRecord rec, const Estimate& gap)
{
  rec.value = gap.value;
  rec.stderr_ = gap.stderr_;
  const Verdict v = verdict_of(gap);
  rec.verdict = to_string(v);
  if (v == Verdict::violated)
    r.passed = false;
  r.worst_margin = r.points.empty() ? gap.value : std::min(r.worst_margin, gap.value);
  r.points.push_back(std::move(rec));
}

} // namespace

SemigroupResult semigroup_apply(const TestFunction& f, double t, const Point6& g, const McConfig& cfg,
                                bool derivatives)
{
  const auto G = batch_for(t, cfg);
  return summarize(collect(f, g, t, G, cfg, derivatives), cfg.groups, derivatives);
}

std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::satisfied:
    return "satisfied";
  case Verdict::indeterminate:
    return "indeterminate";
  default:
    return "violated";
  }
}

Verdict verdict_of(const Estimate& gap)
{
  if (gap.value >= 0)
    return Verdict::satisfied;
  if (gap.value >= -3 * gap.stderr_)
    return Verdict::indeterminate;
  return Verdict::violated;
}

VerifyReport driver_melcher_ratio(const std::vector<TestFunction>& family, double t, const McConfig& cfg)
{
  VerifyReport r;
  r.inequality = "driver_melcher";
  r.passed = true;
  fill_mc_tolerances(r, t, cfg);
  r.tolerances["denominator_floor"] = 1e-12;
  const auto G = batch_for(t, cfg);
  const Point6 o{};
  double cmax = 0;
  for (const auto& f : family) {
    if (!f.gamma)
      throw std::invalid_argument("driver_melcher_ratio: " + f.name + " has no Gamma");
    PathData pd = collect(f, o, t, G, cfg, true);
    std::vector<double> gf(G.size());
    for (std::size_t i = 0; i < G.size(); ++i)
      gf[i] = f.gamma(G[i]);
    const int cg = pd.cols.add(gf);
    const auto s = summarize(pd, cfg.groups, true);
    PointRecord rec;
    rec.t = t;
    rec.label = f.name;
    rec.lhs = s.gamma.value;
    rec.rhs = pd.cols.mean(cg, -1);
    if (!(rec.rhs > 1e-12)) {
      rec.verdict = "division floor";
      r.excluded.push_back(rec);
      continue;
    }
    const auto ratio = jackknife(cfg.groups, [&](int e) { return gamma_of(pd, e) / pd.cols.mean(cg, e); });
    rec.value = ratio.value;
    rec.stderr_ = ratio.stderr_;
    rec.verdict = std::isfinite(ratio.value) ? "finite" : "non-finite";
    if (!std::isfinite(ratio.value) || s.variance_flag)
      r.passed = false;
    if (s.variance_flag)
      r.notes.push_back(f.name + ": variance blow-up flagged");
    cmax = std::max(cmax, ratio.value);
    r.points.push_back(rec);
  }
  r.constants["C_emp"] = cmax;
  r.worst_margin = cmax;
  return r;
}

VerifyReport reverse_poincare_gap(const std::vector<TestFunction>& family, double t, const McConfig& cfg)
{
  VerifyReport r;
  r.inequality = "reverse_poincare";
  r.passed = true;
  fill_mc_tolerances(r, t, cfg);
  const auto G = batch_for(t, cfg);
  const Point6 o{};
  for (const auto& f : family) {
    PathData pd = collect(f, o, t, G, cfg, true);
    std::vector<double> sq(pd.fv.size());
    for (std::size_t i = 0; i < sq.size(); ++i)
      sq[i] = pd.fv[i] * pd.fv[i];
    const int c2 = pd.cols.add(sq);
    auto var = [&](int e) {
      const double m = pd.cols.mean(pd.v, e);
      return pd.cols.mean(c2, e) - m * m;
    };
    const auto gap = jackknife(cfg.groups, [&](int e) { return 1.5 * var(e) - t * gamma_of(pd, e); });
    PointRecord rec;
    rec.t = t;
    rec.label = f.name;
    rec.lhs = t * gamma_of(pd, -1);
    rec.rhs = 1.5 * var(-1);
    record_gap(r, rec, gap);
  }
  return r;
}

VerifyReport radial_inequality_gaps(const std::vector<TestFunction>& family, double t, const Point6& g,
                                    const McConfig& cfg)
{
  VerifyReport r;
  r.inequality = "radial_inequalities";
  r.passed = true;
  fill_mc_tolerances(r, t, cfg);
  const auto G = batch_for(t, cfg);
  for (const auto& f : family) {
    if (!f.radial)
      throw std::invalid_argument("radial_inequality_gaps: " + f.name + " is not radial");
    PathData pd = collect(f, g, t, G, cfg, true);
    const std::size_t n = G.size();
    std::vector<double> sg(n), gof(n), flog(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = pd.fv[i];
      if (v < 0)
        throw std::invalid_argument("radial_inequality_gaps: " + f.name + " is negative on a sampled point");
      const double gm = f.gamma(multiply(g, G[i]));
      sg[i] = std::sqrt(gm);
      gof[i] = v > 0 ? gm / v : 0.0;
      flog[i] = v > 0 ? v * std::log(v) : 0.0;
    }
    const int csg = pd.cols.add(sg), cgof = pd.cols.add(gof), cflog = pd.cols.add(flog);
    const auto li = jackknife(cfg.groups, [&](int e) { return pd.cols.mean(csg, e) - std::sqrt(gamma_of(pd, e)); });
    const auto lsi = jackknife(cfg.groups, [&](int e) {
      const double m = pd.cols.mean(pd.v, e);
      const double ent = pd.cols.mean(cflog, e) - (m > 0 ? m * std::log(m) : 0.0);
      return t * pd.cols.mean(cgof, e) - ent;
    });
    const auto iso = jackknife(cfg.groups, [&](int e) {
      const double m = pd.cols.mean(pd.v, e);
      double s = 0, c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>(i % cfg.groups) == e)
          continue;
        s += std::abs(pd.fv[i] - m);
        c += 1;
      }
      return 4 * std::sqrt(t) * pd.cols.mean(csg, e) - s / c;
    });
    PointRecord base;
    base.t = t;
    base.g = g;
    auto rec = base;
    rec.label = f.name + " (i) Li";
    rec.lhs = std::sqrt(gamma_of(pd, -1));
    rec.rhs = pd.cols.mean(csg, -1);
    record_gap(r, rec, li);
    rec = base;
    rec.label = f.name + " (ii) LSI";
    rec.rhs = t * pd.cols.mean(cgof, -1);
    rec.lhs = rec.rhs - lsi.value;
    record_gap(r, rec, lsi);
    rec = base;
    rec.label = f.name + " (iii) L1";
    rec.rhs = 4 * std::sqrt(t) * pd.cols.mean(csg, -1);
    rec.lhs = rec.rhs - iso.value;
    record_gap(r, rec, iso);
  }
  return r;
}

std::vector<TestFunction> default_polynomial_family()
{
  const std::pair<const char*, const char*> fs[] = {
      {"x1", "x1"},
      {"y1", "y1"},
      {"x1*x2 + y3", "x1*x2 + y3"},
      {"r1", "x1^2 + x2^2 + x3^2"},
      {"z", "x1*y1 + x2*y2 + x3*y3"},
      {"x1^3 - 3*x1*y2", "x1^3 - 3*x1*y2"},
  };
  std::vector<TestFunction> out;
  for (const auto& [name, text] : fs)
    out.push_back(from_polynomial(parse_polynomial<6>(text, algebra::kCoordNames), name));
  return out;
}

std::vector<TestFunction> default_radial_family()
{
  auto P = [](const char* s) { return parse_polynomial<3>(s, radial::kRadialNames); };
  return {
      radial_window(P("r1"), 0.0, 4.0, "r1 bump"),
      radial_window(P("r2"), 0.2, 4.0, "(0.2 + r2) bump"),
      radial_window(P("1 + r1*r2"), 0.0, 4.0, "(1 + r1 r2) bump"),
      radial_window(P("r1^2 - 2*r1*z + z^2"), 0.1, 4.0, "(0.1 + (r1 - z)^2) bump"),
  };
}

std::vector<Point6> gauge_sphere_points(int n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  std::vector<Point6> out;
  for (int k = 0; k < n; ++k) {
    Point6 g;
    for (std::size_t i = 0; i < 6; ++i)
      g[i] = n01(rng);
    const double rho = std::pow(std::pow(norm(g.x), 4) + dot(g.y, g.y), 0.25);
    out.push_back(dilate(1.0 / rho, g));
  }
  return out;
}

namespace {

Json point_json(const Point6& g)
{
  Json a = Json::array();
  for (std::size_t k = 0; k < 6; ++k)
    a.push_back(g[k]);
  return a;
}

Json record_json(const PointRecord& p)
{
  Json j;
  j["label"] = p.label;
  j["t"] = p.t;
  j["g"] = point_json(p.g);
  j["lhs"] = p.lhs;
  j["rhs"] = p.rhs;
  j["value"] = p.value;
  j["stderr"] = p.stderr_;
  j["verdict"] = p.verdict;
  return j;
}

} // namespace

Json to_json(const VerifyReport& r)
{
  Json j;
  j["inequality"] = r.inequality;
  j["passed"] = r.passed;
  j["worst_margin"] = r.worst_margin;
  j["constants"] = Json::object();
  for (const auto& [k, v] : r.constants)
    j["constants"][k] = v;
  j["tolerances"] = Json::object();
  for (const auto& [k, v] : r.tolerances)
    j["tolerances"][k] = v;
  j["feasible"] = r.feasible;
  j["notes"] = r.notes;
  j["points"] = Json::array();
  for (const auto& p : r.points)
    j["points"].push_back(record_json(p));
  j["excluded"] = Json::array();
  for (const auto& p : r.excluded)
    j["excluded"].push_back(record_json(p));
  return j;
}

} // namespace n32::verify
