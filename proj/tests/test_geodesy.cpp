#include "n32/geodesy.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace n32;
using namespace n32::geodesy;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::array<double, 9> rotation(std::mt19937_64& rng)
{
  std::normal_distribution<double> n;
  double a = n(rng), b = n(rng), c = n(rng), d = n(rng);
  const double s = std::sqrt(a * a + b * b + c * c + d * d);
  a /= s, b /= s, c /= s, d /= s;
  return {a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c),
          2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b),
          2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d};
}

Point6 random_point(std::mt19937_64& rng)
{
  std::normal_distribution<double> n;
  Point6 g;
  for (std::size_t k = 0; k < 6; ++k)
    g[k] = n(rng);
  return g;
}

} // namespace

TEST_CASE("geodesic flow")
{
  // straight lines carry no area
  const auto line = exp_map({1, -2, 0.5, 0, 0, 0}, 2.0);
  CHECK(line.end.q.x[0] == doctest::Approx(2));
  CHECK(line.end.q.x[1] == doctest::Approx(-4));
  CHECK(std::abs(line.end.q.y[0]) + std::abs(line.end.q.y[1]) + std::abs(line.end.q.y[2]) < 1e-14);
  CHECK(line.arc_length == doctest::Approx(2 * std::sqrt(5.25)));

  const std::array<double, 6> xi{0.3, -0.7, 1.1, 0.9, 2.0, -1.3};
  const auto f = exp_map(xi, 1.0);
  CHECK(f.h_drift < 1e-8);
  const auto c = exp_closed({0.3, -0.7, 1.1}, {0.9, 2.0, -1.3});
  for (std::size_t k = 0; k < 6; ++k)
    CHECK(f.end.q[k] == doctest::Approx(c[k]).epsilon(1e-9));
  // dilation equivariance: scaling p scales the endpoint by delta_lambda
  const auto f2 = exp_map({0.6, -1.4, 2.2, 0.9, 2.0, -1.3}, 1.0);
  const auto dl = dilate(2.0, f.end.q);
  for (std::size_t k = 0; k < 6; ++k)
    CHECK(f2.end.q[k] == doctest::Approx(dl[k]).epsilon(1e-9));
  // a full turn closes x and encloses pi r^2 with r = |h|/|eta|
  const auto loop = exp_closed({1, 0, 0}, {0, 0, 2 * kPi});
  CHECK(std::abs(loop.x[0]) + std::abs(loop.x[1]) < 1e-12);
  CHECK(loop.y[2] == doctest::Approx(kPi / (4 * kPi * kPi)));
  CHECK_THROWS_AS(exp_map(xi, 1.0, 3), ConvergenceError);
  CHECK_THROWS_AS(exp_map(xi, -1.0), std::invalid_argument);
}

TEST_CASE("heisenberg distance")
{
  CHECK(heisenberg_distance(2, 0) == 2);
  CHECK(heisenberg_distance(0, 1) == doctest::Approx(std::sqrt(4 * kPi)));
  // half circle of diameter 2: length pi, area pi/2
  CHECK(heisenberg_distance(2, kPi / 2) == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(heisenberg_distance(1, 0.3) == heisenberg_distance(-1, -0.3));
}

TEST_CASE("oracles")
{
  const auto a = cc_distance(Point6{{1, 2, -0.5}, {0, 0, 0}});
  CHECK(std::abs(a.d - std::sqrt(5.25)) < 1e-6);
  for (double h : {0.1, 1.0, 7.0}) {
    const auto b = cc_distance(Point6{{0, 0, 0}, {0, 0, h}});
    CHECK(std::abs(b.d - std::sqrt(4 * kPi * h)) < 1e-3);
  }
  // x orthogonal to y: planar Heisenberg geodesic, the projection bound is attained
  const auto c = cc_distance(Point6{{1, 0, 0}, {0, 1, 0}});
  CHECK(c.status == Status::converged);
  CHECK(c.d == doctest::Approx(c.bounds.lower).epsilon(1e-9));
  CHECK(cc_distance(Point6{}).d == 0);
  CHECK_THROWS_AS(cc_distance(Point6{}, 0), std::invalid_argument);
}

TEST_CASE("homogeneity, rotation invariance, sandwich")
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int k = 0; k < 20; ++k) {
    const Point6 g = random_point(rng);
    const auto d = cc_distance(g);
    CHECK(d.status != Status::degraded);
    CHECK(d.bounds.lower <= d.d * (1 + 1e-12));
    CHECK(d.d <= d.bounds.upper * (1 + 1e-12));
    CHECK(d.bounds.lower >= norm(g.x));
    const double lam = u(rng);
    CHECK(std::abs(cc_distance(dilate(lam, g)).d / (lam * d.d) - 1) < 1e-6);
    CHECK(std::abs(cc_distance(rotate(rotation(rng), g)).d / d.d - 1) < 1e-6);
    const auto b = distance_bounds(dilate(lam, g));
    CHECK(b.lower == doctest::Approx(lam * d.bounds.lower));
    CHECK(b.upper == doctest::Approx(lam * d.bounds.upper));
    // symmetric distance: d(g^{-1}) = d(g)
    CHECK(std::abs(cc_distance(inverse(g)).d / d.d - 1) < 1e-6);
  }
}

TEST_CASE("bounds")
{
  const auto b = distance_bounds(Point6{{3, 4, 0}, {0, 0, 0}});
  CHECK(b.lower == 5);
  CHECK(b.upper == 5);
  const Point6 v{{0, 0, 0}, {1, -2, 0.5}};
  const auto bv = distance_bounds(v);
  double loops = 0;
  for (double y : v.y)
    loops += std::sqrt(4 * kPi * std::abs(y));
  CHECK(bv.upper <= loops);
  CHECK(bv.lower >= std::sqrt(4 * kPi * 2));
}

TEST_CASE("gauge constants")
{
  const auto gc = gauge_constants(20, 3);
  CHECK(gc.min_ratio > 0.5);
  CHECK(gc.max_ratio < 4.0);
  CHECK(gc.min_ratio <= gc.max_ratio);
}
