// Kernel-based audits: gradient bound, Harnack fit, Li-Yau feasibility.

#include "n32/geodesy.hpp"
#include "n32/parallel.hpp"
#include "n32/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace n32::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void fill_spec(VerifyReport& r, const kernel::QuadratureSpec& spec)
{
  r.tolerances["quadrature_truncation_radius"] = spec.truncation_radius;
  r.tolerances["quadrature_nodes_per_axis"] = spec.nodes_per_axis;
  r.tolerances["quadrature_gate_tolerance"] = spec.tolerance;
  r.tolerances["kernel_floor"] = spec.floor;
}

bool is_origin(const Point6& g)
{
  for (std::size_t k = 0; k < 6; ++k)
    if (g[k] != 0)
      return false;
  return true;
}

void check_times(const std::vector<double>& ts, const char* who)
{
  if (ts.empty())
    throw std::invalid_argument(std::string(who) + ": empty t list");
  for (double t : ts)
    if (!(t > 0))
      throw std::invalid_argument(std::string(who) + ": t must be positive");
}

} // namespace

VerifyReport gradient_ratio_scan(const std::vector<double>& t_list, const std::vector<Point6>& grid,
                                 const GradientScanOptions& opt)
{
  check_times(t_list, "gradient_ratio_scan");
  kernel::require_converged(opt.spec);
  VerifyReport r;
  r.inequality = "gradient_bound";
  fill_spec(r, opt.spec);
  r.tolerances["exclusion_d_over_sqrt_t"] = opt.exclusion;
  r.tolerances["invariance_rel"] = 1e-3;
  r.tolerances["geodesic_restarts"] = opt.restarts;

  // Distances depend on g only.
  std::vector<geodesy::Distance> dist(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) { dist[k] = geodesy::cc_distance(grid[k], opt.restarts); });

  struct Cell {
    PointRecord rec;
    bool excluded = false, underflow = false;
    double intermediate = 0, inv_rel = 0;
  };
  const std::size_t n = t_list.size() * grid.size();
  std::vector<Cell> cells(n);
  parallel_for(n, [&](std::size_t idx) {
    const double t = t_list[idx / grid.size()];
    const std::size_t k = idx % grid.size();
    const Point6& g = grid[k];
    Cell& c = cells[idx];
    c.rec.t = t;
    c.rec.g = g;
    c.rec.rhs = dist[k].d / t;
    try {
      const auto hg = kernel::horiz_grad_log_pt(t, g, opt.spec);
      c.rec.lhs = hg.magnitude;
      c.intermediate = hg.magnitude / (dist[k].d / t + 1 / std::sqrt(t));
      if (dist[k].d / std::sqrt(t) < opt.exclusion) {
        c.excluded = true;
        c.rec.label = "near origin: d/sqrt(t) below exclusion";
        return;
      }
      c.rec.value = t * hg.magnitude / dist[k].d;
      c.rec.label = "d status " + geodesy::to_string(dist[k].status);
      if (opt.check_invariance) {
        // both sides are homogeneous of degree -1 under (t, g) -> (l^2 t, delta_l g)
        const double s = 1 / std::sqrt(t);
        const Point6 gs = dilate(s, g);
        const auto hs = kernel::horiz_grad_log_pt(1.0, gs, opt.spec);
        const double ds = geodesy::cc_distance(gs, opt.restarts).d;
        const double ratio1 = hs.magnitude / ds;
        c.inv_rel = std::abs(ratio1 / c.rec.value - 1);
      }
    } catch (const UnderflowError& e) {
      c.underflow = c.excluded = true;
      c.rec.label = std::string("underflow: ") + e.what();
    }
  });

  double cmax = 0, cint = 0, inv = 0;
  bool finite = true;
  int degraded = 0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    degraded += dist[k].status == geodesy::Status::degraded;
  for (auto& c : cells) {
    if (!c.underflow)
      cint = std::max(cint, c.intermediate);
    if (c.excluded) {
      r.excluded.push_back(c.rec);
      continue;
    }
    finite = finite && std::isfinite(c.rec.value);
    cmax = std::max(cmax, c.rec.value);
    inv = std::max(inv, c.inv_rel);
    c.rec.verdict = std::isfinite(c.rec.value) ? "finite" : "non-finite";
    r.points.push_back(c.rec);
  }
  r.constants["C_emp"] = cmax;
  r.constants["C_intermediate_emp"] = cint;
  r.constants["invariance_max_rel"] = inv;
  r.constants["degraded_distances"] = degraded;
  r.worst_margin = cmax;
  r.passed = finite && !r.points.empty() && (!opt.check_invariance || inv <= 1e-3);
  if (degraded > 0)
    r.notes.push_back("some distances fell back to the upper bound; their ratios are lower estimates");
  return r;
}

std::vector<HarnackSample> harnack_samples(const std::vector<double>& t_list, const std::vector<Point6>& grid)
{
  std::vector<double> ts = t_list;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<HarnackSample> out;
  const Point6 o{};
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      out.push_back({ts[i], ts[j], o, o});
      for (const auto& g : grid) {
        out.push_back({ts[i], ts[j], g, g});
        out.push_back({ts[i], ts[j], o, g});
        out.push_back({ts[i], ts[j], g, o});
      }
    }
  return out;
}

VerifyReport harnack_fit(const std::vector<HarnackSample>& samples, const kernel::QuadratureSpec& spec,
                         int restarts)
{
  if (samples.empty())
    throw std::invalid_argument("harnack_fit: no samples");
  for (const auto& s : samples)
    if (!(s.t1 > 0) || !(s.t2 > s.t1))
      throw std::invalid_argument("harnack_fit: need t2 > t1 > 0");
  kernel::require_converged(spec);
  VerifyReport r;
  r.inequality = "harnack";
  fill_spec(r, spec);
  r.tolerances["constraint_slack"] = 1e-9;

  // constraint: c <= A1 a + A2 b with a = log(t2/t1) > 0, b = d^2/(t2 - t1) >= 0
  struct Row {
    double a = 0, b = 0, c = 0;
    bool ok = false, origin = false;
    std::string why;
  };
  std::vector<Row> rows(samples.size());
  parallel_for(samples.size(), [&](std::size_t k) {
    const auto& s = samples[k];
    Row& w = rows[k];
    const double p1 = kernel::p_t(s.t1, s.g1, spec), p2 = kernel::p_t(s.t2, s.g2, spec);
    if (!(p1 > spec.floor) || !(p2 > spec.floor)) {
      w.why = "underflow";
      return;
    }
    const auto dd = geodesy::cc_distance(multiply(inverse(s.g1), s.g2), restarts);
    w.a = std::log(s.t2 / s.t1);
    w.b = dd.d * dd.d / (s.t2 - s.t1);
    w.c = std::log(p1 / p2);
    w.origin = is_origin(s.g1) && is_origin(s.g2);
    w.ok = true;
    if (dd.status == geodesy::Status::degraded)
      w.why = "degraded distance";
  });

  std::vector<const Row*> good;
  double origin_bound = -kInf;
  int degraded = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!rows[k].ok) {
      PointRecord ex;
      ex.t = samples[k].t1;
      ex.g = samples[k].g1;
      ex.label = rows[k].why;
      r.excluded.push_back(ex);
      continue;
    }
    degraded += rows[k].why == "degraded distance";
    good.push_back(&rows[k]);
    if (rows[k].origin)
      origin_bound = std::max(origin_bound, rows[k].c / rows[k].a);
  }
  if (good.empty())
    throw ConvergenceError("harnack_fit: every sample underflowed");

  // Minimal A1 for a given A2; the feasible set is {A1 >= a1_of(A2)}.
  auto a1_of = [&](double A2) {
    double m = 0;
    for (const Row* w : good)
      m = std::max(m, (w->c - A2 * w->b) / w->a);
    return m;
  };
  // Candidate vertices: breakpoints of the piecewise-linear a1_of, i.e.
  // pairwise intersections and axis crossings, all with A2 >= 0.
  std::vector<double> a2s{0.0};
  for (std::size_t i = 0; i < good.size(); ++i) {
    const Row& u = *good[i];
    if (u.b > 0 && u.c > 0)
      a2s.push_back(u.c / u.b); // this row reaches A1 = 0
    for (std::size_t j = i + 1; j < good.size(); ++j) {
      const Row& v = *good[j];
      const double den = u.b / u.a - v.b / v.a;
      if (std::abs(den) < 1e-300)
        continue;
      const double A2 = (u.c / u.a - v.c / v.a) / den;
      if (A2 > 0 && std::isfinite(A2))
        a2s.push_back(A2);
    }
  }
  std::sort(a2s.begin(), a2s.end());
  a2s.erase(std::unique(a2s.begin(), a2s.end()), a2s.end());
  double best = kInf, bA1 = 0, bA2 = 0;
  std::vector<std::vector<double>> frontier;
  double last_a1 = kInf;
  for (double A2 : a2s) {
    const double A1 = a1_of(A2);
    if (A1 < last_a1 - 1e-12) { // strictly improving: a Pareto vertex
      frontier.push_back({A1, A2});
      last_a1 = A1;
    }
    if (A1 + A2 < best) {
      best = A1 + A2;
      bA1 = A1;
      bA2 = A2;
    }
  }
  // keep only the corners of the piecewise-linear frontier
  std::vector<std::vector<double>> corners;
  for (const auto& v : frontier) {
    while (corners.size() >= 2) {
      const auto& a = corners[corners.size() - 2];
      const auto& b = corners.back();
      const double cr = (b[1] - a[1]) * (v[0] - a[0]) - (b[0] - a[0]) * (v[1] - a[1]);
      if (std::abs(cr) > 1e-9 * (1 + std::abs(v[0]) + std::abs(v[1])))
        break;
      corners.pop_back();
    }
    corners.push_back(v);
  }
  frontier = std::move(corners);
  r.feasible = frontier;
  r.constants["A1_emp"] = bA1;
  r.constants["A2_emp"] = bA2;
  r.constants["A1_origin_bound"] = origin_bound;
  r.constants["A1_min_over_frontier"] = frontier.empty() ? bA1 : frontier.back()[0];
  r.constants["degraded_distances"] = degraded;

  std::vector<double> margins;
  for (const Row* w : good) {
    PointRecord p;
    const std::size_t k = static_cast<std::size_t>(w - rows.data());
    p.t = samples[k].t1;
    p.g = samples[k].g1;
    p.label = w->origin ? "origin slice" : "pair";
    p.lhs = w->c;
    p.rhs = bA1 * w->a + bA2 * w->b;
    p.value = p.rhs - p.lhs;
    p.verdict = p.value >= -1e-9 * std::max(1.0, std::abs(p.lhs)) ? "satisfied" : "violated";
    margins.push_back(p.value);
    r.points.push_back(p);
  }
  std::sort(margins.begin(), margins.end());
  r.worst_margin = margins.front();
  for (double q : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
    std::ostringstream key;
    key << "margin_q" << static_cast<int>(q * 100);
    r.constants[key.str()] = margins[static_cast<std::size_t>(q * (margins.size() - 1))];
  }
  r.passed = std::isfinite(best) && r.worst_margin >= -1e-9;
  if (std::isfinite(origin_bound) && std::abs(origin_bound - 4.5) > 1e-6)
    r.notes.push_back("origin-slice A1 bound differs from 9/2 beyond 1e-6");
  if (degraded > 0)
    r.notes.push_back("some pair distances are upper bounds (degraded shooting)");
  return r;
}

VerifyReport li_yau_scan(const std::vector<double>& t_list, const std::vector<Point6>& grid,
                         const ConstantsGrid& constants, const kernel::QuadratureSpec& spec)
{
  check_times(t_list, "li_yau_scan");
  kernel::require_converged(spec);
  VerifyReport r;
  r.inequality = "li_yau";
  fill_spec(r, spec);
  constexpr double rel_dt = 1e-3, slack = 1e-6;
  r.tolerances["time_fd_relative_step"] = rel_dt;
  r.tolerances["constraint_slack"] = slack;

  // Everything is multiplied by t, so the terms are dilation invariant:
  //   T = t d_t u,  G = t Gamma(u),  V = t^2 sum |Y_i u|^2,  need T - C1 G - C2 V + C3 >= 0.
  struct Cell {
    PointRecord rec;
    double T = 0, G = 0, V = 0, inv = 0;
    bool ok = false;
  };
  auto terms = [&](double t, const Point6& g, Cell& c) {
    const auto hg = kernel::horiz_grad_log_pt(t, g, spec);
    const double h = rel_dt * t;
    const double up = kernel::p_t(t + h, g, spec), dn = kernel::p_t(t - h, g, spec);
    if (!(up > spec.floor) || !(dn > spec.floor))
      throw UnderflowError("li_yau_scan: neighbour time underflow");
    c.T = t * (std::log(up) - std::log(dn)) / (2 * h);
    c.G = t * hg.magnitude * hg.magnitude;
    c.V = t * t * (hg.Y[0] * hg.Y[0] + hg.Y[1] * hg.Y[1] + hg.Y[2] * hg.Y[2]);
  };

  std::vector<Point6> pts;
  pts.push_back(Point6{});
  for (const auto& g : grid)
    if (!is_origin(g))
      pts.push_back(g);
  const std::size_t n = t_list.size() * pts.size();
  std::vector<Cell> cells(n);
  parallel_for(n, [&](std::size_t idx) {
    const double t = t_list[idx / pts.size()];
    const Point6& g = pts[idx % pts.size()];
    Cell& c = cells[idx];
    c.rec.t = t;
    c.rec.g = g;
    try {
      terms(t, g, c);
      if (!is_origin(g)) {
        Cell u;
        terms(1.0, dilate(1 / std::sqrt(t), g), u);
        const double scale = std::max({1.0, std::abs(c.T), c.G, c.V});
        c.inv = std::max({std::abs(u.T - c.T), std::abs(u.G - c.G), std::abs(u.V - c.V)}) / scale;
      }
      c.ok = true;
      c.rec.label = is_origin(g) ? "origin slice" : "grid";
    } catch (const UnderflowError& e) {
      c.rec.label = std::string("underflow: ") + e.what();
    }
  });

  double origin_c3 = -kInf, inv = 0;
  std::vector<const Cell*> good;
  for (const auto& c : cells) {
    if (!c.ok) {
      r.excluded.push_back(c.rec);
      continue;
    }
    good.push_back(&c);
    inv = std::max(inv, c.inv);
    if (is_origin(c.rec.g))
      origin_c3 = std::max(origin_c3, -c.T);
  }
  auto margin = [](const Cell& c, double C1, double C2, double C3) { return c.T - C1 * c.G - C2 * c.V + C3; };
  for (double C1 : constants.C1)
    for (double C2 : constants.C2)
      for (double C3 : constants.C3) {
        bool ok = true;
        for (const Cell* c : good)
          if (margin(*c, C1, C2, C3) < -slack * std::max(1.0, std::abs(c->T))) {
            ok = false;
            break;
          }
        if (ok)
          r.feasible.push_back({C1, C2, C3});
      }

  // Per-point record against the most permissive corner of the feasible set
  // (or of the grid when it is empty): smallest C1, C2 and largest C3.
  const double C1 = *std::min_element(constants.C1.begin(), constants.C1.end());
  const double C2 = *std::min_element(constants.C2.begin(), constants.C2.end());
  const double C3 = *std::max_element(constants.C3.begin(), constants.C3.end());
  r.worst_margin = kInf;
  for (const Cell* c : good) {
    PointRecord p = c->rec;
    p.lhs = c->T;
    p.rhs = C1 * c->G + C2 * c->V - C3;
    p.value = margin(*c, C1, C2, C3);
    p.verdict = p.value >= -slack * std::max(1.0, std::abs(c->T)) ? "satisfied" : "violated";
    r.worst_margin = std::min(r.worst_margin, p.value);
    r.points.push_back(p);
  }
  r.constants["C3_origin_bound"] = origin_c3;
  r.constants["invariance_max_rel"] = inv;
  r.constants["feasible_count"] = static_cast<double>(r.feasible.size());
  r.constants["grid_count"] = static_cast<double>(constants.C1.size() * constants.C2.size() * constants.C3.size());
  if (!r.feasible.empty()) {
    // the feasible triple with the smallest C3, ties broken by larger C1
    auto best = *std::min_element(r.feasible.begin(), r.feasible.end(), [](const auto& a, const auto& b) {
      return a[2] != b[2] ? a[2] < b[2] : a[0] > b[0];
    });
    r.constants["C1_emp"] = best[0];
    r.constants["C2_emp"] = best[1];
    r.constants["C3_emp"] = best[2];
  }
  r.passed = !r.feasible.empty() && inv <= 1e-3;
  if (r.feasible.empty())
    r.notes.push_back("no (C1, C2, C3) in the grid is feasible on every point");
  return r;
}

} // namespace n32::verify
