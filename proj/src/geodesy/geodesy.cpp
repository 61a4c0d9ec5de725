#include "n32/geodesy.hpp"
#include "n32/errors.hpp"
#include "n32/parallel.hpp"
#include "n32/radial.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace n32::geodesy {

namespace {

constexpr double kPi = 3.14159265358979323846;
using V3 = std::array<double, 3>;

V3 add(const V3& a, const V3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
V3 scale(double s, const V3& a) { return {s * a[0], s * a[1], s * a[2]}; }

/// Unit vector orthogonal to n.
V3 orthogonal(const V3& n)
{
  const std::size_t k = std::abs(n[0]) < 0.6 ? 0 : (std::abs(n[1]) < 0.6 ? 1 : 2);
  V3 e{};
  e[k] = 1;
  V3 a = add(e, scale(-dot(e, n), n));
  return scale(1.0 / norm(a), a);
}

// (phi - sin phi)/phi^2, (phi(1 + cos phi) - 2 sin phi)/phi^2, (2 cos phi + phi sin phi - 2)/phi^2
void area_factors(double p, double& f1, double& f2, double& f3)
{
  if (std::abs(p) < 1e-2) {
    const double p2 = p * p;
    f1 = p / 6 - p * p2 / 120;
    f2 = -p / 6 + p * p2 / 40;
    f3 = -p2 / 12 + p2 * p2 / 180;
    return;
  }
  const double s = std::sin(p), c = std::cos(p);
  f1 = (p - s) / (p * p);
  f2 = (p * (1 + c) - 2 * s) / (p * p);
  f3 = (2 * c + p * s - 2) / (p * p);
}

double sinc(double p) { return std::abs(p) < 1e-4 ? 1 - p * p / 6 : std::sin(p) / p; }
double versc(double p) { return std::abs(p) < 1e-4 ? p / 2 - p * p * p / 24 : (1 - std::cos(p)) / p; }

} // namespace

double hamiltonian(const CotangentState& s)
{
  const V3 p{s.xi[0], s.xi[1], s.xi[2]}, eta{s.xi[3], s.xi[4], s.xi[5]};
  const V3 h = add(p, scale(-0.5, cross(s.q.x, eta)));
  return 0.5 * dot(h, h);
}

FlowResult exp_map(const std::array<double, 6>& xi0, double T, int steps)
{
  if (!(T > 0) || !std::isfinite(T))
    throw std::invalid_argument("exp_map: T must be positive");
  const V3 eta{xi0[3], xi0[4], xi0[5]};
  if (steps <= 0)
    steps = std::max(100, static_cast<int>(std::ceil(norm(eta) * T / 0.005)));
  const double dt = T / steps;
  // state: x, y, p
  using S = std::array<double, 9>;
  auto rhs = [&](const S& s) {
    const V3 x{s[0], s[1], s[2]}, p{s[6], s[7], s[8]};
    const V3 h = add(p, scale(-0.5, cross(x, eta)));
    const V3 dy = scale(0.5, cross(x, h)), dp = scale(0.5, cross(eta, h));
    return S{h[0], h[1], h[2], dy[0], dy[1], dy[2], dp[0], dp[1], dp[2]};
  };
  auto axpy = [](const S& a, double c, const S& b) {
    S r;
    for (std::size_t i = 0; i < 9; ++i)
      r[i] = a[i] + c * b[i];
    return r;
  };
  auto state_of = [&](const S& s) {
    CotangentState c;
    c.q = Point6{{s[0], s[1], s[2]}, {s[3], s[4], s[5]}};
    c.xi = {s[6], s[7], s[8], eta[0], eta[1], eta[2]};
    return c;
  };
  S s{0, 0, 0, 0, 0, 0, xi0[0], xi0[1], xi0[2]};
  const double h0 = hamiltonian(state_of(s));
  double drift = 0;
  for (int k = 0; k < steps; ++k) {
    const S k1 = rhs(s), k2 = rhs(axpy(s, dt / 2, k1)), k3 = rhs(axpy(s, dt / 2, k2)), k4 = rhs(axpy(s, dt, k3));
    for (std::size_t i = 0; i < 9; ++i)
      s[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    if (h0 > 0)
      drift = std::max(drift, std::abs(hamiltonian(state_of(s)) - h0) / h0);
  }
  if (drift > 1e-8 * std::max(1.0, T))
    throw ConvergenceError("exp_map: Hamiltonian drift " + std::to_string(drift) + " exceeds 1e-8 per unit time; use more steps");
  FlowResult r;
  r.end = state_of(s);
  r.arc_length = T * std::sqrt(2 * h0);
  r.h_drift = drift;
  r.steps = steps;
  return r;
}

Point6 exp_closed(const V3& h0, const V3& eta)
{
  const double w = norm(eta);
  const V3 n = w > 0 ? scale(1.0 / w, eta) : V3{0, 0, 1};
  const double m = dot(h0, n);
  const V3 perp = add(h0, scale(-m, n));
  const double c = norm(perp);
  const V3 a = c > 0 ? scale(1.0 / c, perp) : orthogonal(n);
  const V3 b = cross(n, a);
  double f1, f2, f3;
  area_factors(w, f1, f2, f3);
  Point6 g;
  g.x = add(add(scale(m, n), scale(c * sinc(w), a)), scale(c * versc(w), b));
  g.y = add(add(scale(0.5 * c * c * f1, n), scale(0.5 * m * c * f2, a)), scale(0.5 * m * c * f3, b));
  return g;
}

double heisenberg_distance(double r, double area)
{
  r = std::abs(r);
  area = std::abs(area);
  if (area == 0)
    return r;
  if (r == 0)
    return std::sqrt(4 * kPi * area);
  // area / r^2 = (phi - sin phi) / (8 sin^2(phi/2)), increasing on [0, 2 pi)
  const double q = area / (r * r);
  auto ratio = [](double p) {
    const double s = std::sin(p / 2);
    return p < 1e-3 ? p / 12 : (p - std::sin(p)) / (8 * s * s);
  };
  double lo = 0, hi = 2 * kPi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) < q ? lo : hi) = mid;
  }
  const double p = 0.5 * (lo + hi);
  if (2 * kPi - p < 1e-9)
    return std::sqrt(4 * kPi * area);
  return r * (p / 2) / std::sin(p / 2);
}

Bounds distance_bounds(const Point6& g)
{
  const double xn = norm(g.x), yn = norm(g.y);
  Bounds b;
  double lo = xn;
  for (std::size_t i = 0; i < 3; ++i)
    lo = std::max(lo, heisenberg_distance(std::hypot(g.x[next(i)], g.x[after(i)]), g.y[i]));
  if (yn > 0) {
    // frame with y along an axis: the projection sees x orthogonal to y
    const double xpar = dot(g.x, g.y) / yn;
    lo = std::max(lo, heisenberg_distance(std::sqrt(std::max(0.0, xn * xn - xpar * xpar)), yn));
  }
  b.lower = lo;
  double loops = 0;
  for (double v : g.y)
    loops += std::sqrt(4 * kPi * std::abs(v));
  b.upper = xn + std::min(loops, std::sqrt(4 * kPi * yn));
  b.upper = std::max(b.upper, b.lower);
  return b;
}

std::string to_string(Status s)
{
  switch (s) {
  case Status::converged:
    return "converged";
  case Status::single:
    return "single";
  default:
    return "degraded";
  }
}

namespace {

struct EndpointResidual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  Point6 target;
  int inputs() const { return 6; }
  int values() const { return 6; }

  int operator()(const Eigen::VectorXd& v, Eigen::VectorXd& f) const
  {
    const Point6 e = exp_closed({v[0], v[1], v[2]}, {v[3], v[4], v[5]});
    for (std::size_t k = 0; k < 6; ++k)
      f[static_cast<Eigen::Index>(k)] = e[k] - target[k];
    return 0;
  }
};

/// h0 reaching x at time 1 for a given eta (x is linear in h0).
V3 initial_h0(const V3& x, const V3& eta)
{
  const double w = norm(eta);
  const V3 n = w > 0 ? scale(1.0 / w, eta) : V3{0, 0, 1};
  // x = [n n^t + sinc (I - n n^t) + versc [n]x] h0; invert on the plane
  const double s = sinc(w), v = versc(w), den = s * s + v * v;
  const double xp = dot(x, n);
  const V3 xperp = add(x, scale(-xp, n));
  if (den < 1e-12)
    return add(scale(xp, n), scale(std::max(norm(xperp), 1.0), orthogonal(n)));
  // inverse of the rotation-scaling s I + v [n]x on the plane
  const V3 hperp = add(scale(s / den, xperp), scale(-v / den, cross(n, xperp)));
  return add(scale(xp, n), hperp);
}

} // namespace

Distance cc_distance(const Point6& g, int restarts)
{
  if (restarts < 1)
    throw std::invalid_argument("cc_distance: restarts must be >= 1");
  Distance out;
  out.bounds = distance_bounds(g);
  const double xn = norm(g.x), yn = norm(g.y);
  const double rho = std::pow(std::pow(xn, 4) + yn * yn, 0.25);
  if (rho == 0) {
    out.d = 0;
    out.status = Status::converged;
    out.agreeing = out.solutions = restarts;
    return out;
  }
  if (out.bounds.upper - out.bounds.lower <= 1e-12 * out.bounds.upper) {
    // e.g. x = 0 (a circle) or y = 0 (a segment): the bounds pin d
    out.d = out.bounds.upper;
    out.status = Status::converged;
    out.agreeing = out.solutions = restarts;
    return out;
  }
  // unit gauge, canonical frame: x along e1, y in the (e1, e2) plane
  const auto rc = radial::radial_coords(dilate(1.0 / rho, g));
  const Point6 target = radial::canonical_point(rc);

  struct Candidate {
    bool ok = false;
    double len = 0;
    V3 h0{}, eta{};
  };
  std::vector<Candidate> cand(static_cast<std::size_t>(restarts));
  // stratified: Fibonacci directions for eta, magnitudes cycling through (0, 2 pi)
  const int n_mag = 4;
  const int n_dir = std::max(1, (restarts + n_mag - 1) / n_mag);
  parallel_for(cand.size(), [&](std::size_t k) {
    const int dir = static_cast<int>(k) / n_mag, mag = static_cast<int>(k) % n_mag;
    const double zc = 1 - (2.0 * dir + 1) / n_dir;
    const double ph = dir * kPi * (3 - std::sqrt(5.0));
    const double rr = std::sqrt(std::max(0.0, 1 - zc * zc));
    const double w = (mag + 1.0) * 2 * kPi / (n_mag + 0.25);
    const V3 eta{w * rr * std::cos(ph), w * rr * std::sin(ph), w * zc};
    V3 h0 = initial_h0(target.x, eta);
    if (norm(h0) < 1e-3) // x ~ 0: start from a loop of the right size
      h0 = add(h0, scale(std::sqrt(4 * kPi * norm(target.y)), orthogonal(scale(1.0 / w, eta))));
    Eigen::VectorXd v(6);
    v << h0[0], h0[1], h0[2], eta[0], eta[1], eta[2];
    EndpointResidual f;
    f.target = target;
    Eigen::NumericalDiff<EndpointResidual, Eigen::Central> nd(f);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<EndpointResidual, Eigen::Central>> lm(nd);
    lm.parameters.maxfev = 4000;
    lm.parameters.xtol = 1e-14;
    lm.parameters.ftol = 1e-14;
    lm.minimize(v);
    Eigen::VectorXd r(6);
    f(v, r);
    Candidate c;
    c.h0 = {v[0], v[1], v[2]};
    c.eta = {v[3], v[4], v[5]};
    c.len = norm(c.h0);
    c.ok = r.norm() < 1e-10 && std::isfinite(c.len);
    cand[k] = c;
  });
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t k = 0; k < cand.size(); ++k) {
    if (!cand[k].ok)
      continue;
    ++out.solutions;
    if (out.solutions == 1 || cand[k].len < best - 1e-9 * best) {
      best = cand[k].len;
      arg = k;
    }
  }
  const double upper_unit = out.bounds.upper / rho;
  if (out.solutions == 0 || best > upper_unit * (1 + 1e-9)) {
    out.d = out.bounds.upper;
    out.status = Status::degraded;
    return out;
  }
  for (const auto& c : cand)
    if (c.ok && std::abs(c.len - best) <= 1e-9 * best)
      ++out.agreeing;
  out.status = out.agreeing >= 2 ? Status::converged : Status::single;
  out.d = rho * best;
  out.h0 = cand[arg].h0;
  out.eta = cand[arg].eta;
  return out;
}

GaugeConstants gauge_constants(int samples, std::uint64_t seed, int restarts)
{
  if (samples < 1)
    throw std::invalid_argument("gauge_constants: samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  GaugeConstants gc;
  gc.samples = samples;
  gc.min_ratio = std::numeric_limits<double>::infinity();
  gc.max_ratio = 0;
  for (int k = 0; k < samples; ++k) {
    Point6 g;
    for (std::size_t i = 0; i < 6; ++i)
      g[i] = n01(rng);
    const double rho = std::pow(std::pow(norm(g.x), 4) + dot(g.y, g.y), 0.25);
    g = dilate(1.0 / rho, g);
    const auto d = cc_distance(g, restarts);
    if (d.status == Status::degraded)
      ++gc.degraded;
    gc.min_ratio = std::min(gc.min_ratio, d.d);
    gc.max_ratio = std::max(gc.max_ratio, d.d);
  }
  return gc;
}

} // namespace n32::geodesy
