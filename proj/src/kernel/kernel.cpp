// Kernel values, derivatives, scaling and the time-convention bridge.
//
// The printed integral (prefactor (2 pi)^{-15/2}) integrates to (2 pi)^{-3}
// over R^6 and has x-marginal variance 1: it is (2 pi)^{-3} times the
// density of exp(L/2) at time 1. The density of exp(tL) is therefore
//   p_t(x, y) = (2 pi)^3 (2t)^{-9/2} p1_raw(x / sqrt(2t), y / (2t)),
// which satisfies p_t = t^{-9/2} p1(x / sqrt t, y / t) with p1 = p_1.

#include "kernel_internal.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace n32::kernel {

std::string to_string(Scheme s) { return s == Scheme::spherical_bessel ? "spherical_bessel" : "tensor_gl"; }

Scheme scheme_from_string(const std::string& s)
{
  if (s == "spherical_bessel")
    return Scheme::spherical_bessel;
  if (s == "tensor_gl")
    return Scheme::tensor_gl;
  throw std::invalid_argument("unknown quadrature scheme '" + s + "'");
}

QuadratureSpec QuadratureSpec::doubled() const
{
  QuadratureSpec d = *this;
  d.nodes_per_axis = std::min(256, 2 * nodes_per_axis);
  return d;
}

double raw_prefactor() { return std::pow(2.0 * kPi, -7.5); }
double raw_value_at_origin() { return raw_prefactor() * 4.0 * std::pow(kPi, 5); }
double raw_total_mass() { return std::pow(2.0 * kPi, -3.0); }

namespace detail {
double bridge_factor() { return std::pow(2.0, -4.5) * std::pow(2.0 * kPi, 3.0); }
} // namespace detail

namespace {

using Key = std::tuple<double, int, double, double, int, double>;

Key key_of(const QuadratureSpec& s)
{
  return {s.truncation_radius, s.nodes_per_axis, s.panel_width, s.max_phase, static_cast<int>(s.scheme), s.tolerance};
}

const std::vector<std::array<double, 6>>& reference_points()
{
  static const std::vector<std::array<double, 6>> pts = {
      {0, 0, 0, 0, 0, 0},          {1, 0, 0, 0, 0, 0},         {0, 0, 0, 0, 0, 1},
      {0.6, -0.4, 0.9, 0.5, 0.3, -0.7}, {2, 0, 0, 0, 1.5, 0}, {0.3, 0.2, 0.1, 2, -1, 1},
      {-1.5, 1, 0.5, 0.2, 0.2, 0.2}};
  return pts;
}

} // namespace

ConvergenceReport convergence_check(const QuadratureSpec& spec)
{
  static std::mutex mu;
  static std::map<Key, ConvergenceReport> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key_of(spec));
    if (it != cache.end())
      return it->second;
  }
  ConvergenceReport rep;
  rep.points = reference_points();
  const double scale = raw_value_at_origin();
  const QuadratureSpec fine = spec.doubled();
  for (const auto& p : rep.points) {
    std::array<double, 3> x = {p[0], p[1], p[2]}, y = {p[3], p[4], p[5]};
    double a = detail::integrate(x, y, spec, false).value.value;
    double b = detail::integrate(x, y, fine, false).value.value;
    rep.values.push_back(a);
    rep.doubled_values.push_back(b);
    rep.max_change = std::max(rep.max_change, std::abs(a - b) / scale);
  }
  rep.passed = rep.max_change <= spec.tolerance && std::isfinite(rep.max_change);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key_of(spec), rep);
  return rep;
}

void require_converged(const QuadratureSpec& spec)
{
  const auto rep = convergence_check(spec);
  if (!rep.passed) {
    std::ostringstream os;
    os << "quadrature spec failed its convergence gate: doubling nodes changed p1_raw by " << rep.max_change
       << " (relative to p1_raw(0)); tolerance " << spec.tolerance << " (R=" << spec.truncation_radius
       << ", nodes=" << spec.nodes_per_axis << ", scheme=" << to_string(spec.scheme) << ")";
    throw ConvergenceError(os.str());
  }
}

KernelJet p1_raw_jet_unchecked(const std::array<double, 3>& x, const std::array<double, 3>& y,
                               const QuadratureSpec& spec, bool with_gradient)
{
  return detail::integrate(x, y, spec, with_gradient);
}

KernelValue p1_raw(const std::array<double, 3>& x, const std::array<double, 3>& y, const QuadratureSpec& spec)
{
  require_converged(spec);
  return detail::integrate(x, y, spec, false).value;
}

KernelJet p1_raw_jet(const std::array<double, 3>& x, const std::array<double, 3>& y, const QuadratureSpec& spec)
{
  require_converged(spec);
  return detail::integrate(x, y, spec, true);
}

namespace {

void check_time(double t)
{
  if (!(t > 0) || !std::isfinite(t))
    throw std::domain_error("heat time must be positive");
}

/// Jet of p_t (value and Euclidean gradient) through the bridge.
KernelJet pt_jet(double t, const Point6& g, const QuadratureSpec& spec, bool with_gradient)
{
  check_time(t);
  require_converged(spec);
  // p_t(x, y) = B (2t)^{-9/2} ... collapses to one raw evaluation at
  // (x / sqrt(2t), y / (2t)) with prefactor B t^{-9/2}.
  const double sx = 1.0 / std::sqrt(2.0 * t), sy = 1.0 / (2.0 * t);
  std::array<double, 3> x = {g.x[0] * sx, g.x[1] * sx, g.x[2] * sx};
  std::array<double, 3> y = {g.y[0] * sy, g.y[1] * sy, g.y[2] * sy};
  KernelJet raw = detail::integrate(x, y, spec, with_gradient);
  const double c = detail::bridge_factor() * std::pow(t, -4.5);
  KernelJet out = raw;
  out.value.value = c * raw.value.value;
  out.value.imag_leak = c * raw.value.imag_leak;
  out.value.abs_mass = c * raw.value.abs_mass;
  for (std::size_t k = 0; k < 3; ++k) {
    out.grad[k] = c * sx * raw.grad[k];
    out.grad[3 + k] = c * sy * raw.grad[3 + k];
  }
  return out;
}

} // namespace

double p1(const Point6& g, const QuadratureSpec& spec) { return pt_jet(1.0, g, spec, false).value.value; }

std::array<double, 6> grad_p1(const Point6& g, const QuadratureSpec& spec) { return pt_jet(1.0, g, spec, true).grad; }

double p_t(double t, const Point6& g, const QuadratureSpec& spec) { return pt_jet(t, g, spec, false).value.value; }

std::array<double, 6> grad_p_t(double t, const Point6& g, const QuadratureSpec& spec)
{
  return pt_jet(t, g, spec, true).grad;
}

std::array<double, 9> printed_a_matrix(const std::array<double, 3>& a)
{
  return {0, a[0], -a[1], -a[0], 0, a[2], a[1], -a[2], 0};
}

std::array<double, 2> xa2x_forms(const std::array<double, 3>& x, const std::array<double, 3>& a)
{
  const auto A = printed_a_matrix(a);
  std::array<double, 3> ax{};
  for (std::size_t i = 0; i < 3; ++i)
    ax[i] = A[3 * i] * x[0] + A[3 * i + 1] * x[1] + A[3 * i + 2] * x[2];
  // A is antisymmetric, so x A^2 x^t = -(A x^t).(A x^t).
  const double printed = -dot(ax, ax);
  const double an = norm(a), xn = norm(x), xa = dot(x, a);
  return {printed, -(an * an * xn * xn - xa * xa)};
}

HorizontalGradient horiz_grad_log_pt(double t, const Point6& g, const QuadratureSpec& spec)
{
  const KernelJet j = pt_jet(t, g, spec, true);
  const double p = j.value.value;
  // Below ~1e-10 of the integrand's envelope the value is cancellation noise.
  const double noise = 1e-10 * j.value.abs_mass;
  if (!(p > spec.floor) || !(p > noise)) {
    std::ostringstream os;
    os << "kernel underflow: p_t = " << p << " at t = " << t << " (floor " << std::max(spec.floor, noise) << ")";
    throw UnderflowError(os.str());
  }
  HorizontalGradient hg;
  hg.value = p;
  const auto& d = j.grad;
  for (std::size_t i = 0; i < 3; ++i) {
    const double xi = d[i] - 0.5 * g.x[next(i)] * d[3 + after(i)] + 0.5 * g.x[after(i)] * d[3 + next(i)];
    hg.X[i] = xi / p;
    hg.Y[i] = d[3 + i] / p;
  }
  hg.magnitude = norm(hg.X);
  return hg;
}

double heat_residual(double t, const Point6& g, const QuadratureSpec& spec, HeatResidualOptions opt)
{
  check_time(t);
  if (!(opt.step > 0))
    throw std::invalid_argument("heat_residual: step must be positive");
  auto kernel = [&](double tau, const Point6& h) {
    double v = p_t(tau, h, spec);
    return opt.mis_scaled ? v * std::sqrt(tau) : v;
  };
  const double p0 = kernel(t, g);
  if (!(p0 > spec.floor))
    throw UnderflowError("heat_residual: kernel below floor");
  const double dt = opt.step * t;
  const double dpdt = (kernel(t + dt, g) - kernel(t - dt, g)) / (2.0 * dt);
  const double eps = opt.step * std::sqrt(t);
  double lp = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    std::array<double, 3> v{};
    v[i] = eps;
    const double fwd = kernel(t, multiply(g, horizontal(v)));
    v[i] = -eps;
    const double bwd = kernel(t, multiply(g, horizontal(v)));
    lp += (fwd + bwd - 2.0 * p0) / (eps * eps);
  }
  return std::abs(dpdt - lp) / p0;
}

WConstants constants_W(const QuadratureSpec& spec)
{
  const GaussRule& g = gauss_rule(spec.nodes_per_axis);
  const int panels = std::max(1, static_cast<int>(std::ceil(spec.truncation_radius / spec.panel_width)));
  const double w = spec.truncation_radius / panels;
  double w1 = 0, w2 = 0;
  for (int p = 0; p < panels; ++p) {
    const double rm = (p + 0.5) * w;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double r = rm + 0.5 * w * g.nodes[i];
      const double wt = 0.5 * w * g.weights[i];
      const double sh = detail::sinhc_half(r);
      // |a|/sinh(|a|/2) = 2 sh, |a|^2 coth(|a|/2)/sinh(|a|/2) = 4 sh (1 + h)
      w1 += wt * r * r * 2.0 * sh;
      w2 += wt * r * r * 4.0 * sh * (1.0 + detail::coth_excess(r));
    }
  }
  return {4.0 * kPi * w1, 4.0 * kPi * w2};
}

} // namespace n32::kernel
