// Importance-sampling audit of the printed normalization.
//
// Proposal: the Gaussian matched to the moment table (x ~ N(0, 2 I),
// y ~ N(0, I)) mixed defensively with components that widen x with |y| and
// use iid Student-t in y. p1 decays only like exp(-c|y|) vertically, so the
// pure Gaussian alone has unbounded weights.

#include "kernel_internal.hpp"
#include "n32/parallel.hpp"

#include <cmath>
#include <random>

namespace n32::kernel {

namespace {

struct Proposal {
  double coupled, heavy, nu;

  static double log_gauss(double v, double var) { return -0.5 * v * v / var - 0.5 * std::log(2.0 * kPi * var); }

  double log_student(double v) const
  {
    return std::lgamma(0.5 * (nu + 1)) - std::lgamma(0.5 * nu) - 0.5 * std::log(nu * kPi) -
           0.5 * (nu + 1) * std::log1p(v * v / nu);
  }

  // At fixed large y the x-profile of p1 peaks near |x| ~ sqrt(2|y|), so the
  // coupled components widen x with |y|.
  static double spread(const Point6& g) { return 2.0 * (1.0 + norm(g.y)); }

  double density(const Point6& g) const
  {
    double lx = 0, lxw = 0, lg = 0, lt = 0;
    const double w = spread(g);
    for (std::size_t i = 0; i < 3; ++i) {
      lx += log_gauss(g.x[i], 2.0);
      lxw += log_gauss(g.x[i], w);
      lg += log_gauss(g.y[i], 1.0);
      lt += log_student(g.y[i]);
    }
    return (1.0 - coupled - heavy) * std::exp(lx + lg) + coupled * std::exp(lxw + lg) + heavy * std::exp(lxw + lt);
  }

  Point6 draw(std::mt19937_64& rng) const
  {
    std::normal_distribution<double> n01;
    std::student_t_distribution<double> st(nu);
    std::uniform_real_distribution<double> u01;
    Point6 g;
    const double u = u01(rng);
    const bool heavy_y = u < heavy, wide_x = u < heavy + coupled;
    for (std::size_t i = 0; i < 3; ++i)
      g.y[i] = heavy_y ? st(rng) : n01(rng);
    const double sx = std::sqrt(wide_x ? spread(g) : 2.0);
    for (std::size_t i = 0; i < 3; ++i)
      g.x[i] = sx * n01(rng);
    return g;
  }
};

MeanEstimate summarize(const std::vector<double>& v)
{
  const double n = static_cast<double>(v.size());
  double m = 0;
  for (double a : v)
    m += a;
  m /= n;
  double s2 = 0;
  for (double a : v)
    s2 += (a - m) * (a - m);
  s2 /= std::max(1.0, n - 1);
  return {m, std::sqrt(s2 / n)};
}

std::vector<Point6> draw_all(const Proposal& q, std::size_t n, std::uint64_t seed)
{
  std::vector<Point6> pts(n);
  // One substream per block of 1024 so extending the sample keeps a prefix.
  for (std::size_t b = 0; b * 1024 < n; ++b) {
    std::seed_seq ss{seed, static_cast<std::uint64_t>(b)};
    std::mt19937_64 rng(ss);
    for (std::size_t i = b * 1024; i < std::min(n, (b + 1) * 1024); ++i)
      pts[i] = q.draw(rng);
  }
  return pts;
}

} // namespace

NormalizationReport normalization(const NormalizationOptions& opt)
{
  if (opt.samples < 2)
    throw std::invalid_argument("normalization: need at least 2 samples");
  if (!(opt.heavy_tail_fraction >= 0 && opt.coupled_fraction >= 0 &&
        opt.heavy_tail_fraction + opt.coupled_fraction <= 1) ||
      !(opt.student_nu > 2))
    throw std::invalid_argument("normalization: invalid proposal parameters");
  require_converged(opt.spec);
  const Proposal q{opt.coupled_fraction, opt.heavy_tail_fraction, opt.student_nu};
  const auto pts = draw_all(q, opt.samples, opt.seed);
  const std::size_t n = pts.size();
  std::vector<double> raw(n), mass(n), r1(n), r2(n), z(n);
  const double jac = std::pow(2.0, -4.5), bridge = detail::bridge_factor();
  parallel_for(n, [&](std::size_t i) {
    const Point6& g = pts[i];
    std::array<double, 3> x, y;
    for (std::size_t k = 0; k < 3; ++k) {
      x[k] = g.x[k] / std::sqrt(2.0);
      y[k] = g.y[k] / 2.0;
    }
    const double v = detail::integrate(x, y, opt.spec, false).value.value;
    const double w = v / q.density(g);
    raw[i] = jac * w;
    mass[i] = bridge * w;
    r1[i] = mass[i] * dot(g.x, g.x);
    r2[i] = mass[i] * dot(g.y, g.y);
    z[i] = mass[i] * dot(g.x, g.y);
  });
  NormalizationReport rep;
  rep.samples = n;
  rep.seed = opt.seed;
  rep.raw_integral = summarize(raw);
  rep.ratio_to_exact = {rep.raw_integral.mean / raw_total_mass(), rep.raw_integral.stderr_ / raw_total_mass()};
  rep.mass = summarize(mass);
  rep.r1 = summarize(r1);
  rep.r2 = summarize(r2);
  rep.z = summarize(z);
  return rep;
}

double importance_self_check(std::size_t samples, std::uint64_t seed)
{
  const Proposal q{0.3, 0.4, 3.0};
  const auto pts = draw_all(q, samples, seed);
  double s = 0;
  for (const auto& g : pts)
    s += q.density(g) / q.density(g);
  return s / static_cast<double>(samples);
}

} // namespace n32::kernel
