#include "n32/sampler.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace n32;
using namespace n32::sampler;

TEST_CASE("step is the group product with a horizontal increment")
{
  const Point6 s{{0.3, -1, 2}, {0.1, 0.2, 0.3}};
  CHECK(step(s, {0, 0, 0}) == s);
  CHECK(step(Point6{}, {1, 2, 3}) == Point6{{1, 2, 3}, {0, 0, 0}});
  const std::array<double, 3> d{0.5, -0.25, 0.75};
  CHECK(step(s, d) == multiply(s, horizontal(d)));

  // a sequence of steps equals one product of the increment elements
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  Point6 g{}, prod = identity_element<double>();
  for (int k = 0; k < 50; ++k) {
    std::array<double, 3> b{n(rng), n(rng), n(rng)};
    g = step(g, b);
    prod = multiply(prod, horizontal(b));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(g.x[i] == doctest::Approx(prod.x[i]).epsilon(1e-12));
    CHECK(g.y[i] == doctest::Approx(prod.y[i]).epsilon(1e-12));
  }
}

TEST_CASE("configuration checks")
{
  CHECK(step_count({.t = 1, .dt = 1e-3}) == 1000);
  CHECK(step_count({.t = 1, .dt = 0.3}) == 3);
  CHECK_THROWS_AS(step_count({.t = 0}), std::invalid_argument);
  CHECK_THROWS_AS(step_count({.t = 1, .dt = -1}), std::invalid_argument);
  CHECK_THROWS_AS(step_count({.n_paths = 0}), std::invalid_argument);
  const auto b = simulate({.t = 1, .dt = 0.3, .n_paths = 10});
  CHECK(b.dt_adjusted);
  CHECK(b.dt_used == doctest::Approx(1.0 / 3));
}

TEST_CASE("reproducible and independent of the thread count")
{
  const SimConfig c{.t = 0.5, .dt = 0.01, .n_paths = 3000, .seed = 42};
  const auto a = simulate(c, 1);
  const auto b = simulate(c, 3);
  CHECK(a.samples == b.samples);
  auto c2 = c;
  c2.seed = 43;
  CHECK(simulate(c2, 1).samples != a.samples);
  // paths are grouped in fixed blocks: a longer run extends a shorter one
  auto c3 = c;
  c3.n_paths = 5000;
  const auto d = simulate(c3, 2);
  CHECK(std::equal(a.samples.begin(), a.samples.end(), d.samples.begin()));
}

TEST_CASE("moment identities")
{
  for (double t : {0.5, 1.0}) {
    const auto b = simulate({.t = t, .dt = 0.01, .n_paths = 20000, .seed = 9});
    const auto& m = b.moments;
    CHECK(std::abs(m.r1.mean - 6 * t) < 3 * m.r1.stderr_);
    CHECK(std::abs(m.r2.mean - 3 * t * t) < 3 * m.r2.stderr_);
    CHECK(std::abs(m.z.mean) < 3 * m.z.stderr_);
    for (const auto& c : m.coord)
      CHECK(std::abs(c.mean) < 3.5 * c.stderr_);
  }
}

TEST_CASE("discrete area variance")
{
  // Each step misses the Levy area inside it: E r2 = 3 t (t - dt) exactly.
  const auto b = simulate({.t = 1, .dt = 0.1, .n_paths = 40000, .seed = 2});
  CHECK(std::abs(b.moments.r2.mean - 3 * 0.9) < 3 * b.moments.r2.stderr_);
  CHECK(std::abs(b.moments.r2.mean - 3.0) > 3 * b.moments.r2.stderr_);
  CHECK(std::abs(b.moments.r1.mean - 6.0) < 3 * b.moments.r1.stderr_);
}

TEST_CASE("dilation check")
{
  // the pushed batch runs at effective step lambda^2 dt; keep dt / t small
  const SimConfig c{.t = 0.25, .dt = 0.0025, .n_paths = 20000, .seed = 5};
  const auto same = dilation_distribution_check(c, 1.0);
  CHECK(same.identical);
  CHECK(same.passed);
  const auto r = dilation_distribution_check(c, 2.0);
  CHECK(r.passed);
  CHECK(r.pushed.r1.mean / (c.t * 6) == doctest::Approx(4).epsilon(0.05));
  CHECK(r.fresh_moments.r2.mean / (3 * c.t * c.t) == doctest::Approx(16).epsilon(0.1));
  CHECK_THROWS_AS(dilation_distribution_check(c, 0.0), std::invalid_argument);
}

TEST_CASE("kde report is deterministic and flags sparse points")
{
  const auto b = simulate({.t = 1, .dt = 0.02, .n_paths = 20000, .seed = 1});
  auto pts = default_bulk_points();
  pts.push_back(Point6{{4, 0, 0}, {0, 0, 3}});
  KdeOptions o;
  o.bootstrap = 20;
  const auto a = kde_compare(b, pts, o);
  const auto a2 = kde_compare(b, pts, o);
  REQUIRE(a.points.size() == pts.size());
  CHECK(a.points.back().sparse);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(a.points[i].kde == a2.points[i].kde);
    CHECK(a.points[i].ci_lo <= a.points[i].ci_hi);
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    CHECK_FALSE(a.points[i].sparse);
  // coarse but unbiased at this size
  CHECK(a.max_abs_discrepancy < 0.25);
  CHECK_THROWS_AS(kde_compare(b, {Point6{}}, o), std::invalid_argument);
}
