#include "n32/parse.hpp"
#include "n32/radial.hpp"

#include <doctest.h>

#include <random>

using namespace n32;
using namespace n32::radial;

namespace {

RadialPoly R(const char* s) { return parse_polynomial<3>(s, kRadialNames); }

RadialJet<double> jet(double f1, double f2, double fz)
{
  RadialJet<double> j;
  j.f1 = f1;
  j.f2 = f2;
  j.fz = fz;
  return j;
}

} // namespace

TEST_CASE("coordinates")
{
  CHECK(radial_coords(Point6{}) == RadialPoint{0, 0, 0});
  CHECK(radial_coords(Point6{{1, 0, 0}, {0, 1, 0}}) == RadialPoint{1, 1, 0});
  CHECK(canonical_point({1, 1, 0}) == Point6{{1, 0, 0}, {0, 0, 1}});
  CHECK(canonical_point({0, 4, 0}) == Point6{{0, 0, 0}, {2, 0, 0}});
  CHECK_THROWS_AS(canonical_point({1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(canonical_point({-1, 1, 0}), std::invalid_argument);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  for (int k = 0; k < 100; ++k) {
    Point6 g{{n(rng), n(rng), n(rng)}, {n(rng), n(rng), n(rng)}};
    // random rotation from a normalized quaternion
    double a = n(rng), b = n(rng), c = n(rng), d = n(rng);
    double s = std::sqrt(a * a + b * b + c * c + d * d);
    a /= s, b /= s, c /= s, d /= s;
    std::array<double, 9> u = {a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c),
                               2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b),
                               2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d};
    auto p = radial_coords(g), q = radial_coords(rotate(u, g));
    CHECK(p.r1 == doctest::Approx(q.r1).epsilon(1e-12));
    CHECK(p.r2 == doctest::Approx(q.r2).epsilon(1e-12));
    CHECK(p.z == doctest::Approx(q.z).epsilon(1e-12).scale(p.r1 + p.r2));
    auto back = radial_coords(canonical_point(p));
    CHECK(back.r1 == doctest::Approx(p.r1).epsilon(1e-12));
    CHECK(back.r2 == doctest::Approx(p.r2).epsilon(1e-12));
    CHECK(back.z == doctest::Approx(p.z).epsilon(1e-12).scale(p.r1 + p.r2));
  }
}

TEST_CASE("reduced operator tables")
{
  RadialPoint p{2.5, 1.5, -0.75};
  CHECK(lhat(jet(1, 0, 0), p) == 6);
  CHECK(lhat(jet(0, 1, 0), p) == 2.5);
  CHECK(lhat(jet(0, 0, 1), p) == 0);
  CHECK(gammahat(jet(1, 0, 0), jet(1, 0, 0), p) == 10);
  CHECK(gammahat(jet(0, 0, 1), jet(0, 0, 1), p) == 1.5);
  CHECK(gammahat(jet(1, 0, 0), jet(0, 0, 1), p) == -1.5);
  CHECK(gammahat(jet(1, 0, 0), jet(0, 1, 0), p) == 0);

  CHECK(gammahat2_expanded(jet(0, 0, 1), p) == doctest::Approx(1.25));
  CHECK(gammahat2_expanded(jet(1, 0, 0), p) == doctest::Approx(12));
  CHECK(gammahat2_expanded(jet(0, 1, 0), p) == doctest::Approx(2 * 1.5 + 2.5 * 2.5 / 2));

  auto sz = gammahat2_sos(jet(0, 0, 1), p);
  CHECK(sz.value == doctest::Approx(1.25));
  CHECK(sz.terms[2] == doctest::Approx(1.25));
  auto s2 = gammahat2_sos(jet(0, 1, 0), p);
  CHECK(s2.value == doctest::Approx(2 * 1.5 + 2.5 * 2.5 / 2));
  int nonzero = 0;
  for (double t : s2.terms)
    nonzero += t != 0;
  CHECK(nonzero == 4);
  CHECK_THROWS_AS(gammahat2_sos(jet(0, 1, 0), RadialPoint{0, 1, 0}), DegenerateError);
}

TEST_CASE("sos agrees with expanded display on random jets")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_real_distribution<double> pos(1e-3, 10);
  for (int k = 0; k < 2000; ++k) {
    RadialPoint p;
    p.r1 = pos(rng);
    p.r2 = pos(rng);
    p.z = u(rng) * std::sqrt(p.r1 * p.r2);
    RadialJet<double> j;
    for (double* v : {&j.f1, &j.f2, &j.fz, &j.f11, &j.f12, &j.f1z, &j.f22, &j.f2z, &j.fzz})
      *v = 3 * u(rng);
    auto s = gammahat2_sos(j, p);
    double e = gammahat2_expanded(j, p);
    CHECK(s.value >= 0);
    double scale = 0;
    for (double t : s.terms)
      scale += std::abs(t);
    CHECK(std::abs(s.value - e) <= 1e-10 * std::max(1.0, scale));
  }
}

TEST_CASE("formal jet identities")
{
  auto rep = gammahat2_formal_check();
  CHECK(rep.third_order_cancels);
  CHECK(rep.expanded_residual.is_zero());
  CHECK(rep.sos_residual.is_zero());
  CHECK(rep.r1_only_residual.is_zero());
}

TEST_CASE("lift and consistency")
{
  CHECK(lift_radial(R("r1")) == algebra::r1());
  CHECK(lift_radial(R("z^2")) == algebra::zdot() * algebra::zdot());
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto f = random_radial_poly(s, 2);
    CHECK(algebra::is_radial(lift_radial(f)));
    auto g = algebra::random_rational_point(s + 40);
    for (const auto& r : consistency_check(f, g))
      CHECK(r == 0);
  }
  for (const char* text : {"r1*r2", "z^2", "r1"})
    for (const auto& r : consistency_check(R(text), algebra::random_rational_point(3)))
      CHECK(r == 0);
}

TEST_CASE("nine equations")
{
  for (const char* text : {"z", "r1^2 + r2*z", "r1*r2 - 3*z^2 + r2"}) {
    auto res = nine_equations_residual(R(text), algebra::random_rational_point(17));
    for (const auto& r : res)
      CHECK(r == 0);
  }
  auto bad = nine_equations_residual(algebra::x(0), algebra::random_rational_point(17));
  bool any = false;
  for (const auto& r : bad)
    any = any || r != 0;
  CHECK(any);
}

TEST_CASE("first proof certificate")
{
  Point6Q g{{1, 0, 0}, {0, 1, 0}};
  auto c = first_proof_certificate(R("z"), g);
  CHECK(c.gamma_norm2 == 1);
  CHECK(c.residual == 0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto p = algebra::random_rational_point(100 + s);
    auto f = random_radial_poly(s, 2);
    try {
      auto cert = first_proof_certificate(f, p);
      CHECK(cert.residual == 0);
      CHECK(cert.rhs >= 0);
      for (const auto& r : cert.closed_form_residuals)
        CHECK(r == 0);
    } catch (const DegenerateError&) {
    }
  }
  Point6Q parallel{{1, 2, 0}, {2, 4, 0}};
  CHECK_THROWS_AS(first_proof_certificate(R("r2"), parallel), DegenerateError);
}
