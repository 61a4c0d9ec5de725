// Quadrature engines for the Fourier representation of the kernel.
//
// Spherical coordinates a = r (u e1 + s (cos psi e2 + sin psi e3)) with
// e1 = x/|x|, y in span(e1, e2), s = sqrt(1 - u^2). The x-dependent factor
// only sees u, so the azimuth enters through y.a = A + B cos psi,
// A = r y_par u, B = r y_perp s, and integrates to Bessel functions:
//   int cos(A + B cos psi)        = 2 pi cos A J0(B)
//   int cos psi cos(A + B cos psi) = -2 pi sin A J1(B)
//   int sin(A + B cos psi)        = 2 pi sin A J0(B)
//   int cos psi sin(A + B cos psi) = 2 pi cos A J1(B)
// Every remaining integrand is even under u -> -u, so u runs over [0, 1].

#include "kernel_internal.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace n32::kernel {

const GaussRule& gauss_rule(int n)
{
  if (n < 1 || n > 256)
    throw std::invalid_argument("gauss_rule: node count out of range");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end())
    return it->second;
  GaussRule rule;
  // legendre_p_zeros returns the nonnegative zeros in increasing order.
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> all;
  for (auto z = zeros.rbegin(); z != zeros.rend(); ++z)
    if (*z != 0.0)
      all.push_back(-*z);
  for (double z : zeros)
    all.push_back(z);
  for (double z : all) {
    const double dp = boost::math::legendre_p_prime(n, z);
    rule.nodes.push_back(z);
    rule.weights.push_back(2.0 / ((1.0 - z * z) * dp * dp));
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

namespace detail {

double sinhc_half(double r)
{
  // (r/2)/sinh(r/2), without overflow for large r
  const double h = 0.5 * r;
  if (h < 1e-4)
    return 1.0 - h * h / 6.0;
  return 2.0 * h * std::exp(-h) / (1.0 - std::exp(-r));
}

double coth_excess(double r)
{
  // (r/2) coth(r/2) - 1
  if (r < 1e-2) {
    const double r2 = r * r;
    return r2 / 12.0 - r2 * r2 / 720.0;
  }
  const double e = std::exp(-r);
  return 0.5 * r * (1.0 + e) / (1.0 - e) - 1.0;
}

Frame make_frame(const std::array<double, 3>& x, const std::array<double, 3>& y)
{
  Frame f;
  f.xn = norm(x);
  const double yn = norm(y);
  if (f.xn > 0)
    f.e1 = {x[0] / f.xn, x[1] / f.xn, x[2] / f.xn};
  else if (yn > 0)
    f.e1 = {y[0] / yn, y[1] / yn, y[2] / yn};
  else
    f.e1 = {1, 0, 0};
  f.ypar = dot(y, f.e1);
  std::array<double, 3> v = {y[0] - f.ypar * f.e1[0], y[1] - f.ypar * f.e1[1], y[2] - f.ypar * f.e1[2]};
  f.yperp = norm(v);
  if (f.yperp > 1e-14 * std::max(1.0, yn)) {
    f.e2 = {v[0] / f.yperp, v[1] / f.yperp, v[2] / f.yperp};
  } else {
    f.yperp = 0;
    // any unit vector orthogonal to e1
    std::array<double, 3> t = std::abs(f.e1[0]) < 0.9 ? std::array<double, 3>{1, 0, 0} : std::array<double, 3>{0, 1, 0};
    auto c = cross(f.e1, t);
    const double cn = norm(c);
    f.e2 = {c[0] / cn, c[1] / cn, c[2] / cn};
  }
  f.e3 = cross(f.e1, f.e2);
  return f;
}

std::vector<double> radial_breaks(const QuadratureSpec& spec, const Frame& f)
{
  const double yn = std::hypot(f.ypar, f.yperp);
  double w = spec.panel_width;
  if (yn > 0)
    w = std::min(w, spec.max_phase / yn);
  w = std::min(w, 3.0 * spec.max_phase / (0.25 * f.xn * f.xn + 1e-300));
  const int n = std::max(1, static_cast<int>(std::ceil(spec.truncation_radius / w)));
  std::vector<double> b(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    b[static_cast<std::size_t>(k)] = spec.truncation_radius * k / n;
  return b;
}

std::vector<double> tau_breaks(double r, const QuadratureSpec& spec, const Frame& f, double c)
{
  // tau = 1 - u on [0, 1]; geometric grading toward tau = 0 resolves the
  // exp(-c (1 - u^2)) peak and the J0(r y_perp s) structure near s = 0.
  const double b = r * f.yperp;
  const double tmin = 0.25 / (1.0 + 2.0 * c + b * b);
  std::vector<double> geo = {0.0};
  for (double t = tmin; t < 1.0; t *= 2.0)
    geo.push_back(t);
  geo.push_back(1.0);
  auto s_of = [](double t) { return std::sqrt(std::max(0.0, t * (2.0 - t))); };
  std::vector<double> out = {0.0};
  for (std::size_t k = 0; k + 1 < geo.size(); ++k) {
    const double a = geo[k], e = geo[k + 1];
    const double sa = s_of(a), se = s_of(e);
    const double phase = r * std::abs(f.ypar) * (e - a) + b * (se - sa) + c * (se * se - sa * sa) / 3.0;
    const int m = std::max(1, static_cast<int>(std::ceil(phase / spec.max_phase)));
    for (int j = 1; j <= m; ++j)
      out.push_back(a + (e - a) * j / m);
  }
  return out;
}

namespace {

constexpr double kTwoPi = 2.0 * kPi;

struct Accum {
  double value = 0, leak = 0, mass = 0;
  std::array<double, 6> grad{};
};

void integrate_spherical_bessel(const QuadratureSpec& spec, const Frame& f, bool with_gradient, Accum& acc)
{
  const GaussRule& g = gauss_rule(spec.nodes_per_axis);
  const auto rb = radial_breaks(spec, f);
  const double base = -0.5 * f.xn * f.xn;
  for (std::size_t p = 0; p + 1 < rb.size(); ++p) {
    const double r0 = rb[p], r1 = rb[p + 1];
    const double rh = 0.5 * (r1 - r0), rm = 0.5 * (r1 + r0);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double r = rm + rh * g.nodes[i];
      const double wr = rh * g.weights[i];
      const double K = r * r * sinhc_half(r);
      const double h = coth_excess(r);
      const double c = 0.5 * h * f.xn * f.xn;
      const auto tb = tau_breaks(r, spec, f, c);
      Accum row;
      for (std::size_t q = 0; q + 1 < tb.size(); ++q) {
        const double th = 0.5 * (tb[q + 1] - tb[q]), tm = 0.5 * (tb[q + 1] + tb[q]);
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
          const double tau = tm + th * g.nodes[j];
          const double wu = 2.0 * th * g.weights[j]; // factor 2: u and -u
          const double u = 1.0 - tau;
          const double s2 = tau * (2.0 - tau);
          const double s = std::sqrt(s2);
          const double env = wu * std::exp(base - c * s2);
          const double A = r * f.ypar * u, B = r * f.yperp * s;
          const double ca = std::cos(A), sa = std::sin(A);
          const double j0 = B == 0 ? 1.0 : boost::math::cyl_bessel_j(0, B);
          const double C0 = kTwoPi * ca * j0;
          row.value += env * C0;
          row.mass += env * kTwoPi;
          if (!with_gradient)
            continue;
          const double j1 = B == 0 ? 0.0 : boost::math::cyl_bessel_j(1, B);
          const double C1 = -kTwoPi * sa * j1;
          const double S0 = kTwoPi * sa * j0;
          const double S1 = kTwoPi * ca * j1;
          for (std::size_t k = 0; k < 3; ++k) {
            row.grad[k] += env * (-(1.0 + h) * f.xn * f.e1[k] * C0 + h * f.xn * u * (u * f.e1[k] * C0 + s * f.e2[k] * C1));
            row.grad[3 + k] -= env * r * (u * f.e1[k] * S0 + s * f.e2[k] * S1);
          }
        }
      }
      const double w = wr * K;
      acc.value += w * row.value;
      acc.mass += w * row.mass;
      // The sine part is odd in u and cancels node-by-node between u and
      // -u, so this scheme has no leak to report.
      for (std::size_t k = 0; k < 6; ++k)
        acc.grad[k] += w * row.grad[k];
    }
  }
}

void integrate_tensor(const QuadratureSpec& spec, const Frame& f, bool with_gradient, Accum& acc)
{
  const GaussRule& g = gauss_rule(spec.nodes_per_axis);
  const auto rb = radial_breaks(spec, f);
  const double base = -0.5 * f.xn * f.xn;
  std::array<double, 3> x = {f.xn * f.e1[0], f.xn * f.e1[1], f.xn * f.e1[2]};
  std::array<double, 3> y = {f.ypar * f.e1[0] + f.yperp * f.e2[0], f.ypar * f.e1[1] + f.yperp * f.e2[1],
                             f.ypar * f.e1[2] + f.yperp * f.e2[2]};
  for (std::size_t p = 0; p + 1 < rb.size(); ++p) {
    const double rh = 0.5 * (rb[p + 1] - rb[p]), rm = 0.5 * (rb[p + 1] + rb[p]);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double r = rm + rh * g.nodes[i];
      const double wr = rh * g.weights[i] * r * r * sinhc_half(r);
      const double h = coth_excess(r);
      const double c = 0.5 * h * f.xn * f.xn;
      // full u range: mirror the graded [0,1] breaks to [-1, 0]
      const auto tb = tau_breaks(r, spec, f, c);
      std::vector<double> ub;
      for (double t : tb)
        ub.push_back(-(1.0 - t));
      for (std::size_t k = 1; k < tb.size(); ++k)
        ub.push_back(1.0 - tb[tb.size() - 1 - k]);
      const int npsi = std::max(4, static_cast<int>(std::ceil(r * f.yperp / spec.max_phase * kTwoPi / 2.0)) + 2);
      for (std::size_t q = 0; q + 1 < ub.size(); ++q) {
        const double uh = 0.5 * (ub[q + 1] - ub[q]), um = 0.5 * (ub[q + 1] + ub[q]);
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
          const double u = um + uh * g.nodes[j];
          const double s2 = std::max(0.0, 1.0 - u * u), s = std::sqrt(s2);
          const double E = std::exp(base - c * s2);
          const double wu = uh * g.weights[j];
          for (int m = 0; m < npsi; ++m) {
            const double ph = kPi / npsi, pm = ph * (2 * m + 1);
            for (std::size_t l = 0; l < g.nodes.size(); ++l) {
              const double psi = pm + ph * g.nodes[l];
              const double w = wr * wu * ph * g.weights[l] * E;
              std::array<double, 3> at;
              for (std::size_t k = 0; k < 3; ++k)
                at[k] = u * f.e1[k] + s * (std::cos(psi) * f.e2[k] + std::sin(psi) * f.e3[k]);
              const double phase = r * dot(y, at);
              const double cp = std::cos(phase), sp = std::sin(phase);
              acc.value += w * cp;
              acc.leak += w * sp;
              acc.mass += w;
              if (!with_gradient)
                continue;
              const double xa = dot(x, at);
              for (std::size_t k = 0; k < 3; ++k) {
                acc.grad[k] += w * cp * (-(1.0 + h) * x[k] + h * xa * at[k]);
                acc.grad[3 + k] -= w * r * at[k] * sp;
              }
            }
          }
        }
      }
    }
  }
}

} // namespace

KernelJet integrate(const std::array<double, 3>& x, const std::array<double, 3>& y, const QuadratureSpec& spec,
                    bool with_gradient)
{
  if (!(spec.truncation_radius > 0) || spec.nodes_per_axis < 1 || !(spec.panel_width > 0) || !(spec.max_phase > 0))
    throw std::invalid_argument("QuadratureSpec: nonpositive parameter");
  const Frame f = make_frame(x, y);
  Accum acc;
  if (spec.scheme == Scheme::spherical_bessel)
    integrate_spherical_bessel(spec, f, with_gradient, acc);
  else
    integrate_tensor(spec, f, with_gradient, acc);
  const double P = raw_prefactor();
  KernelJet out;
  out.value.value = P * acc.value;
  out.value.imag_leak = P * std::abs(acc.leak);
  out.value.abs_mass = P * acc.mass;
  out.value.spec = spec;
  for (std::size_t k = 0; k < 6; ++k)
    out.grad[k] = P * acc.grad[k];
  return out;
}

} // namespace detail

} // namespace n32::kernel
