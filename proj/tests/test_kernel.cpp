#include "n32/kernel.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace n32;
using namespace n32::kernel;

namespace {

const Point6 kG{{0.6, -0.4, 0.9}, {0.5, 0.3, -0.7}};

std::array<double, 9> random_rotation(std::mt19937_64& rng)
{
  std::normal_distribution<double> n;
  double a = n(rng), b = n(rng), c = n(rng), d = n(rng);
  const double s = std::sqrt(a * a + b * b + c * c + d * d);
  a /= s, b /= s, c /= s, d /= s;
  return {a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c),
          2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b),
          2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d};
}

} // namespace

TEST_CASE("closed-form constants")
{
  CHECK(raw_value_at_origin() == doctest::Approx(1.263165751726e-3).epsilon(1e-10));
  CHECK(raw_total_mass() == doctest::Approx(std::pow(2 * kPi, -3)));
  const auto v = p1_raw({0, 0, 0}, {0, 0, 0});
  CHECK(std::abs(v.value / raw_value_at_origin() - 1) < 1e-10);
  CHECK(v.imag_leak == 0);
  const auto w = constants_W();
  CHECK(std::abs(w.W1 / (8 * std::pow(kPi, 5)) - 1) < 1e-10);
  CHECK(std::abs(w.W2 / (64 * std::pow(kPi, 5)) - 1) < 1e-10);
}

TEST_CASE("gauss rule integrates polynomials exactly")
{
  for (int n : {1, 4, 12, 33}) {
    const auto& g = gauss_rule(n);
    REQUIRE(g.nodes.size() == static_cast<std::size_t>(n));
    for (int k = 0; k < 2 * n; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i)
        s += g.weights[i] * std::pow(g.nodes[i], k);
      CHECK(s == doctest::Approx(k % 2 ? 0.0 : 2.0 / (k + 1)).epsilon(1e-13));
    }
  }
  CHECK_THROWS(gauss_rule(0));
}

TEST_CASE("convergence gate")
{
  const auto rep = convergence_check(QuadratureSpec{});
  CHECK(rep.passed);
  CHECK(rep.max_change < 1e-12);
  QuadratureSpec crude{.truncation_radius = 8, .nodes_per_axis = 2, .panel_width = 4};
  CHECK_FALSE(convergence_check(crude).passed);
  CHECK_THROWS_AS(p1_raw({0, 0, 0}, {0, 0, 0}, crude), ConvergenceError);
  CHECK_THROWS_AS(p1(Point6{}, crude), ConvergenceError);
  CHECK(scheme_from_string(to_string(Scheme::tensor_gl)) == Scheme::tensor_gl);
  CHECK_THROWS_AS(scheme_from_string("simpson"), std::invalid_argument);
}

TEST_CASE("gradient matches finite differences")
{
  const QuadratureSpec s;
  const auto j = p1_raw_jet(kG.x, kG.y, s);
  for (int k = 0; k < 6; ++k) {
    auto x = kG.x, y = kG.y, x2 = kG.x, y2 = kG.y;
    const double h = 1e-4;
    if (k < 3)
      x[k] += h, x2[k] -= h;
    else
      y[k - 3] += h, y2[k - 3] -= h;
    const double fd = (p1_raw_jet_unchecked(x, y, s, false).value.value -
                       p1_raw_jet_unchecked(x2, y2, s, false).value.value) /
                      (2 * h);
    CHECK(std::abs(fd - j.grad[k]) < 1e-8 * raw_value_at_origin());
  }
}

TEST_CASE("independent schemes agree")
{
  QuadratureSpec t{.nodes_per_axis = 12, .scheme = Scheme::tensor_gl};
  const QuadratureSpec s;
  for (const Point6& g : {Point6{{1, 0, 0}, {0, 0, 0}}, Point6{{0.3, 0.2, 0.1}, {1, -0.5, 0.5}}}) {
    const double a = p1_raw_jet_unchecked(g.x, g.y, s, false).value.value;
    const double b = p1_raw_jet_unchecked(g.x, g.y, t, false).value.value;
    CHECK(std::abs(a - b) < 1e-8 * raw_value_at_origin());
  }
}

TEST_CASE("symmetries")
{
  std::mt19937_64 rng(11);
  const double base = p1(kG);
  CHECK(base > 0);
  // rotations, inversion g -> g^{-1}, and x -> -x
  for (int k = 0; k < 5; ++k)
    CHECK(std::abs(p1(rotate(random_rotation(rng), kG)) / base - 1) < 1e-9);
  CHECK(std::abs(p1(inverse(kG)) / base - 1) < 1e-12);
  CHECK(std::abs(p1(Point6{{-kG.x[0], -kG.x[1], -kG.x[2]}, kG.y}) / base - 1) < 1e-12);
}

TEST_CASE("scaling law and time bridge")
{
  for (double lam : {0.5, 1.7}) {
    for (double t : {0.5, 1.0}) {
      const double a = p_t(lam * lam * t, dilate(lam, kG));
      const double b = std::pow(lam, -9) * p_t(t, kG);
      CHECK(std::abs(a / b - 1) < 1e-9);
    }
  }
  CHECK(p_t(1.0, kG) == doctest::Approx(p1(kG)).epsilon(1e-15));
  CHECK_THROWS_AS(p_t(0.0, kG), std::domain_error);
  CHECK_THROWS_AS(p_t(-1.0, kG), std::domain_error);

  // Euclidean gradient of p_t through the bridge
  const auto g = grad_p_t(0.7, kG);
  for (int k = 0; k < 6; ++k) {
    Point6 a = kG, b = kG;
    const double h = 1e-5;
    (k < 3 ? a.x[k] : a.y[k - 3]) += h;
    (k < 3 ? b.x[k] : b.y[k - 3]) -= h;
    CHECK(std::abs((p_t(0.7, a) - p_t(0.7, b)) / (2 * h) - g[k]) < 1e-7 * std::abs(p_t(0.7, Point6{})));
  }
}

TEST_CASE("heat equation and its negative control")
{
  for (double t : {0.5, 1.0, 2.0}) {
    CHECK(heat_residual(t, kG) < 1e-3);
    // t^{-4} scaling is off by sqrt t; the residual is 1/(2t)
    CHECK(heat_residual(t, kG, {}, {.mis_scaled = true}) == doctest::Approx(0.5 / t).epsilon(1e-2));
  }
  // second order in the step
  const double r1 = heat_residual(1.0, kG, {}, {.step = 2e-2});
  const double r2 = heat_residual(1.0, kG, {}, {.step = 1e-2});
  CHECK(r1 / r2 == doctest::Approx(4).epsilon(0.2));
}

TEST_CASE("log-gradient and underflow")
{
  const auto hg = horiz_grad_log_pt(1.0, kG);
  CHECK(hg.value == doctest::Approx(p1(kG)));
  const auto d = grad_p1(kG);
  const double x0 = (d[0] - 0.5 * kG.x[1] * d[5] + 0.5 * kG.x[2] * d[4]) / hg.value;
  CHECK(hg.X[0] == doctest::Approx(x0));
  CHECK(hg.magnitude == doctest::Approx(norm(hg.X)));
  // at the origin the gradient vanishes by symmetry
  CHECK(horiz_grad_log_pt(1.0, Point6{}).magnitude < 1e-12);
  CHECK_THROWS_AS(horiz_grad_log_pt(1.0, Point6{{0, 0, 0}, {0, 0, 60}}), UnderflowError);
}

TEST_CASE("printed matrix reduces to the cross-product form with permuted axis")
{
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n;
  bool differs = false;
  for (int k = 0; k < 50; ++k) {
    std::array<double, 3> x{n(rng), n(rng), n(rng)}, a{n(rng), n(rng), n(rng)};
    const auto f = xa2x_forms(x, a);
    const std::array<double, 3> w{-a[2], -a[1], -a[0]};
    const double wx = dot(w, x);
    CHECK(f[0] == doctest::Approx(-(dot(a, a) * dot(x, x) - wx * wx)));
    differs = differs || std::abs(f[0] - f[1]) > 1e-6;
  }
  CHECK(differs);
  // a1 = a3: the permutation is harmless up to sign
  const auto f = xa2x_forms({1, 2, 3}, {0.5, -1, 0.5});
  CHECK(f[0] == doctest::Approx(f[1]));
}

TEST_CASE("normalization audit")
{
  CHECK(importance_self_check(1000, 3) == 1.0);
  NormalizationOptions o;
  o.samples = 200;
  const auto r = normalization(o);
  CHECK(std::abs(r.ratio_to_exact.mean - 1) < 4 * r.ratio_to_exact.stderr_);
  CHECK(r.ratio_to_exact.stderr_ < 0.2);
  CHECK(r.mass.mean == doctest::Approx(r.ratio_to_exact.mean));
  CHECK(std::abs(r.z.mean) < 4 * r.z.stderr_ + 1e-12);
  // reproducible
  CHECK(normalization(o).raw_integral.mean == r.raw_integral.mean);
  o.samples = 1;
  CHECK_THROWS_AS(normalization(o), std::invalid_argument);
}
