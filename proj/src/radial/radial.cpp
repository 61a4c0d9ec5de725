#include "n32/radial.hpp"

#include <functional>
#include <random>
#include <stdexcept>

namespace n32::radial {

void validate(const RadialPoint& p)
{
  if (!(p.r1 >= 0) || !(p.r2 >= 0))
    throw std::invalid_argument("radial point: r1 and r2 must be nonnegative");
  const double slack = 1e-12 * std::max(1.0, p.r1 * p.r2);
  if (p.z * p.z > p.r1 * p.r2 + slack)
    throw std::invalid_argument("radial point: z^2 > r1 r2");
}

Point6 canonical_point(const RadialPoint& p)
{
  validate(p);
  Point6 g;
  if (p.r1 == 0) {
    g.y[0] = std::sqrt(p.r2);
    return g;
  }
  const double s = std::sqrt(p.r1);
  g.x[0] = s;
  g.y[0] = p.z / s;
  g.y[2] = std::sqrt(std::max(0.0, p.r2 - p.z * p.z / p.r1));
  return g;
}

algebra::MultiPoly lift_radial(const RadialPoly& f)
{
  return f.compose<6>({algebra::r1(), algebra::r2(), algebra::zdot()});
}

RadialPoly random_radial_poly(std::uint64_t seed, int max_degree, double density, int coef_range)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  std::uniform_int_distribution<int> coef(-coef_range, coef_range);
  RadialPoly p;
  for (int a = 0; a <= max_degree; ++a)
    for (int b = 0; a + b <= max_degree; ++b)
      for (int c = 0; a + b + c <= max_degree; ++c)
        if (keep(rng) < density)
          p.add_term({static_cast<std::int8_t>(a), static_cast<std::int8_t>(b), static_cast<std::int8_t>(c)},
                     Rational(coef(rng)));
  return p;
}

std::array<Rational, 3> consistency_check(const RadialPoly& f, const Point6Q& g)
{
  const auto F = lift_radial(f);
  const auto d = algebra::derivatives_at(F, g);
  const auto p = radial_coords(g);
  const auto j = jet_of(f, p);
  return {d.lf() - lhat(j, p), d.gamma() - gammahat(j, j, p), d.gamma2() - gammahat2_expanded(j, p)};
}

std::array<Rational, 12> nine_equations_residual(const algebra::MultiPoly& f, const Point6Q& g)
{
  const auto d = algebra::derivatives_at(f, g);
  const auto& x = g.x;
  const auto& y = g.y;
  std::array<Rational, 12> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t i1 = next(i), i2 = after(i);
    // theta_i = x_{i+1} X_{i+2} - x_{i+2} X_{i+1} + c0 Y_i + c1 Y_{i+1} + c2 Y_{i+2}
    const Rational c0 = -(x[i1] * x[i1] + x[i2] * x[i2]) / 2;
    const Rational c1 = (x[i] * x[i1] - 2 * y[i2]) / 2;
    const Rational c2 = (x[i] * x[i2] + 2 * y[i1]) / 2;
    out[i] = x[i1] * d.Xf[i2] - x[i2] * d.Xf[i1] + c0 * d.Yf[i] + c1 * d.Yf[i1] + c2 * d.Yf[i2];
    // X_k applied to the constraint, commuted so every second derivative
    // reads X_a X_k f or X_k Y_b f; the brackets produce the lone X terms.
    const std::array<std::size_t, 3> ks = {i, i1, i2};
    const std::array<Rational, 3> lone = {Rational(0), d.Xf[i2], -d.Xf[i1]};
    for (std::size_t m = 0; m < 3; ++m) {
      const std::size_t k = ks[m];
      out[3 + 3 * i + m] = lone[m] + x[i1] * d.XXf[i2][k] - x[i2] * d.XXf[i1][k] + c0 * d.XYf[k][i] +
                           c1 * d.XYf[k][i1] + c2 * d.XYf[k][i2];
    }
  }
  return out;
}

std::array<Rational, 12> nine_equations_residual(const RadialPoly& f, const Point6Q& g)
{
  return nine_equations_residual(lift_radial(f), g);
}

} // namespace n32::radial
