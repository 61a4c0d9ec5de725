// Sampler vs quadrature in radial coordinates.
//
// (r1, r2, z) = (|x|^2, |y|^2, x.y). Writing dx = (sqrt r1 / 2) dr1 dOmega and
// splitting y along and across x gives dx dy = (1/4) dr1 dr2 dz dOmega dphi,
// so a rotation-invariant density p has radial density 2 pi^2 p.

#include "n32/parallel.hpp"
#include "n32/radial.hpp"
#include "n32/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace n32::sampler {

std::vector<Point6> default_bulk_points()
{
  // (r1, r2, z) triples; every one has p_1 within a factor 10 of the max on this set
  const double pts[10][3] = {{2.0, 1.0, 0.0}, {3.0, 1.5, 0.5},  {4.0, 2.0, 0.0}, {3.0, 2.5, -1.0},
                             {5.0, 2.0, 1.0}, {2.5, 0.8, -0.4}, {2.5, 1.2, 0.3}, {6.0, 3.0, 0.0},
                             {3.5, 1.2, 0.0}, {3.0, 1.0, -0.8}};
  std::vector<Point6> out;
  for (const auto& p : pts)
    out.push_back(radial::canonical_point({p[0], p[1], p[2]}));
  return out;
}

namespace {

std::array<double, 3> to_smoothing(const std::array<double, 3>& r)
{
  return {std::log(r[0]), std::log(r[1]), r[2] / std::sqrt(r[0] * r[1])};
}

} // namespace

KdeReport kde_compare(const SampleBatch& batch, const std::vector<Point6>& points, const KdeOptions& opt)
{
  for (const auto& p : points)
    if (opt.log_transform && (dot(p.x, p.x) <= 0 || dot(p.y, p.y) <= 0))
      throw std::invalid_argument("kde_compare: log-transformed KDE needs x != 0 and y != 0");
  if (batch.samples.size() < 2)
    throw std::invalid_argument("kde_compare: batch too small");
  if (!(opt.bandwidth_scale > 0) || opt.bootstrap < 0 || (opt.order != 2 && opt.order != 4))
    throw std::invalid_argument("kde_compare: invalid options");
  const std::size_t n = batch.samples.size();
  std::vector<std::array<double, 3>> rc(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = batch.samples[i];
    rc[i] = {dot(g.x, g.x), dot(g.y, g.y), dot(g.x, g.y)};
    if (opt.log_transform)
      rc[i] = to_smoothing(rc[i]);
  }
  KdeReport rep;
  rep.t = batch.config.t;
  for (int k = 0; k < 3; ++k) {
    double m = 0, v = 0;
    for (const auto& r : rc)
      m += r[k];
    m /= static_cast<double>(n);
    for (const auto& r : rc)
      v += (r[k] - m) * (r[k] - m);
    v /= static_cast<double>(n - 1);
    rep.bandwidth[k] = opt.bandwidth_scale * std::sqrt(v) * std::pow(static_cast<double>(n), -1.0 / 7.0);
  }
  const auto& h = rep.bandwidth;
  const double norm = 1.0 / (std::pow(2.0 * kernel::kPi, 1.5) * h[0] * h[1] * h[2]);

  rep.points.resize(points.size());
  parallel_for(points.size(), [&](std::size_t j) {
    KdePoint& kp = rep.points[j];
    kp.point = points[j];
    const auto rp = radial::radial_coords(points[j]);
    kp.r1 = rp.r1, kp.r2 = rp.r2, kp.z = rp.z;
    kp.kernel_density = 2.0 * kernel::kPi * kernel::kPi * kernel::p_t(rep.t, points[j], opt.spec);
    std::array<double, 3> c{kp.r1, kp.r2, kp.z};
    // d(ln r1, ln r2, z / sqrt(r1 r2)) / d(r1, r2, z) is triangular
    const double jac = opt.log_transform ? std::pow(kp.r1 * kp.r2, -1.5) : 1.0;
    if (opt.log_transform)
      c = to_smoothing(c);
    std::vector<double> w;
    for (const auto& r : rc) {
      const double u0 = (r[0] - c[0]) / h[0], u1 = (r[1] - c[1]) / h[1], u2 = (r[2] - c[2]) / h[2];
      const double q = u0 * u0 + u1 * u1 + u2 * u2;
      if (q < 50.0) {
        double a = jac * norm * std::exp(-0.5 * q);
        // the radial density is strongly curved in r2; a fourth-order kernel
        // removes the O(h^2) smoothing bias
        if (opt.order == 4)
          a *= 0.125 * (3 - u0 * u0) * (3 - u1 * u1) * (3 - u2 * u2);
        w.push_back(a);
      }
    }
    double s = 0;
    for (double a : w)
      s += a;
    kp.kde = s / static_cast<double>(n);
    kp.rel_discrepancy = kp.kde / kp.kernel_density - 1.0;
    // Poisson bootstrap: samples with zero kernel weight contribute nothing.
    std::vector<double> boot;
    std::seed_seq ss{opt.bootstrap_seed, static_cast<std::uint64_t>(j)};
    std::mt19937_64 rng(ss);
    std::poisson_distribution<int> pois(1.0);
    for (int b = 0; b < opt.bootstrap; ++b) {
      double sb = 0;
      for (double a : w)
        sb += a * pois(rng);
      boot.push_back(sb / static_cast<double>(n) / kp.kernel_density - 1.0);
    }
    if (!boot.empty()) {
      std::sort(boot.begin(), boot.end());
      kp.ci_lo = boot[static_cast<std::size_t>(0.025 * (boot.size() - 1))];
      kp.ci_hi = boot[static_cast<std::size_t>(0.975 * (boot.size() - 1))];
    }
  });
  double mx = 0;
  for (const auto& kp : rep.points)
    mx = std::max(mx, kp.kernel_density);
  for (auto& kp : rep.points) {
    kp.sparse = kp.kernel_density < 0.1 * mx;
    if (!kp.sparse)
      rep.max_abs_discrepancy = std::max(rep.max_abs_discrepancy, std::abs(kp.rel_discrepancy));
  }
  return rep;
}

} // namespace n32::sampler
