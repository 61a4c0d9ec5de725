#include "n32/algebra.hpp"

#include <random>

namespace n32::algebra {

MultiPoly x(std::size_t i) { return MultiPoly::variable(cyc(i)); }
MultiPoly y(std::size_t i) { return MultiPoly::variable(3 + cyc(i)); }

MultiPoly r1() { return x(0) * x(0) + x(1) * x(1) + x(2) * x(2); }
MultiPoly r2() { return y(0) * y(0) + y(1) * y(1) + y(2) * y(2); }
MultiPoly zdot() { return x(0) * y(0) + x(1) * y(1) + x(2) * y(2); }

std::string to_string(const MultiPoly& p) { return p.to_string(kCoordNames); }

MultiPoly VectorField::operator()(const MultiPoly& f) const { return vf_apply(*this, f); }

bool VectorField::is_zero() const
{
  for (const auto& c : coef)
    if (!c.is_zero())
      return false;
  return true;
}

VectorField operator+(const VectorField& a, const VectorField& b)
{
  VectorField r;
  for (std::size_t k = 0; k < 6; ++k)
    r.coef[k] = a.coef[k] + b.coef[k];
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b)
{
  VectorField r;
  for (std::size_t k = 0; k < 6; ++k)
    r.coef[k] = a.coef[k] - b.coef[k];
  return r;
}

VectorField operator*(const Rational& s, const VectorField& v)
{
  VectorField r;
  for (std::size_t k = 0; k < 6; ++k)
    r.coef[k] = v.coef[k] * s;
  return r;
}

namespace {
const Rational kHalf(1, 2);
}

VectorField X(std::size_t i)
{
  i = cyc(i);
  VectorField v;
  v.coef[i] = MultiPoly(1);
  v.coef[3 + after(i)] = -(x(next(i)) * kHalf);
  v.coef[3 + next(i)] = x(after(i)) * kHalf;
  return v;
}

VectorField Y(std::size_t i)
{
  VectorField v;
  v.coef[3 + cyc(i)] = MultiPoly(1);
  return v;
}

VectorField Xhat(std::size_t i)
{
  i = cyc(i);
  VectorField v;
  v.coef[i] = MultiPoly(1);
  v.coef[3 + after(i)] = x(next(i)) * kHalf;
  v.coef[3 + next(i)] = -(x(after(i)) * kHalf);
  return v;
}

VectorField theta(std::size_t i)
{
  i = cyc(i);
  VectorField v;
  v.coef[after(i)] = x(next(i));
  v.coef[next(i)] = -x(after(i));
  v.coef[3 + after(i)] = y(next(i));
  v.coef[3 + next(i)] = -y(after(i));
  return v;
}

VectorField dilation_field()
{
  VectorField v;
  for (std::size_t i = 0; i < 3; ++i) {
    v.coef[i] = x(i) * kHalf;
    v.coef[3 + i] = y(i);
  }
  return v;
}

MultiPoly vf_apply(const VectorField& v, const MultiPoly& f)
{
  MultiPoly r;
  for (std::size_t k = 0; k < 6; ++k) {
    if (v.coef[k].is_zero())
      continue;
    MultiPoly d = f.derivative(k);
    if (!d.is_zero())
      r += v.coef[k] * d;
  }
  return r;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w)
{
  VectorField r;
  for (std::size_t k = 0; k < 6; ++k)
    r.coef[k] = vf_apply(v, w.coef[k]) - vf_apply(w, v.coef[k]);
  return r;
}

namespace {

// The stock fields are built once; X(i) allocates polynomials.
const std::array<VectorField, 3>& horizontal_fields()
{
  static const std::array<VectorField, 3> fields = {X(0), X(1), X(2)};
  return fields;
}

} // namespace

MultiPoly sublaplacian(const MultiPoly& f)
{
  MultiPoly r;
  for (const auto& xi : horizontal_fields())
    r += vf_apply(xi, vf_apply(xi, f));
  return r;
}

MultiPoly gamma(const MultiPoly& f, const MultiPoly& g)
{
  MultiPoly r;
  for (const auto& xi : horizontal_fields())
    r += vf_apply(xi, f) * vf_apply(xi, g);
  return r;
}

MultiPoly gamma2(const MultiPoly& f)
{
  MultiPoly g = gamma(f, f);
  return (sublaplacian(g) - gamma(f, sublaplacian(f)) * Rational(2)) * kHalf;
}

MultiPoly gamma2_bochner(const MultiPoly& f)
{
  const auto& xs = horizontal_fields();
  std::array<MultiPoly, 3> xf;
  for (std::size_t i = 0; i < 3; ++i)
    xf[i] = vf_apply(xs[i], f);
  MultiPoly r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      MultiPoly xx = vf_apply(xs[i], xf[j]);
      r += xx * xx;
    }
  for (std::size_t i = 0; i < 3; ++i) {
    MultiPoly a = vf_apply(xs[next(i)], f.derivative(3 + after(i)));
    MultiPoly b = vf_apply(xs[after(i)], f).derivative(3 + next(i));
    r -= xf[i] * (a - b) * Rational(2);
  }
  return r;
}

MultiPoly gamma2_symmetrized(const MultiPoly& f)
{
  const auto& xs = horizontal_fields();
  std::array<MultiPoly, 3> xf;
  for (std::size_t i = 0; i < 3; ++i)
    xf[i] = vf_apply(xs[i], f);
  MultiPoly r;
  for (std::size_t i = 0; i < 3; ++i) {
    MultiPoly xii = vf_apply(xs[i], xf[i]);
    MultiPoly yi = f.derivative(3 + i);
    MultiPoly d = (vf_apply(xs[i], xf[next(i)]) + vf_apply(xs[next(i)], xf[i])) * kHalf;
    r += xii * xii + yi * yi * kHalf + d * d * Rational(2);
    MultiPoly y_next = f.derivative(3 + next(i));
    r += (xf[i] * vf_apply(xs[after(i)], y_next) - xf[after(i)] * vf_apply(xs[i], y_next)) * Rational(2);
  }
  return r;
}

MultiPoly gamma2_forms_equal(const MultiPoly& f) { return gamma2_bochner(f) - gamma2_symmetrized(f); }

template <class T>
T PointDerivatives<T>::gamma2() const
{
  T r = T(0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      r += XXf[i][j] * XXf[i][j];
  for (std::size_t i = 0; i < 3; ++i)
    r -= T(2) * Xf[i] * (XYf[next(i)][after(i)] - XYf[after(i)][next(i)]);
  return r;
}

template <class T>
T PointDerivatives<T>::gamma_of_y() const
{
  T r = T(0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      r += XYf[j][i] * XYf[j][i];
  return r;
}

template struct PointDerivatives<Rational>;
template struct PointDerivatives<double>;

DerivativeTable::DerivativeTable(const MultiPoly& f)
{
  const auto& xs = horizontal_fields();
  for (std::size_t i = 0; i < 3; ++i) {
    xf_[i] = vf_apply(xs[i], f);
    yf_[i] = f.derivative(3 + i);
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      xxf_[i][j] = vf_apply(xs[i], xf_[j]);
      xyf_[i][j] = vf_apply(xs[i], yf_[j]);
    }
}

namespace {

template <class T, class P>
PointDerivatives<T> evaluate_table(const std::array<MultiPoly, 3>& xf, const std::array<MultiPoly, 3>& yf,
                                   const std::array<std::array<MultiPoly, 3>, 3>& xxf,
                                   const std::array<std::array<MultiPoly, 3>, 3>& xyf, const P& p)
{
  const auto a = p.to_array();
  std::span<const T, 6> pt(a);
  PointDerivatives<T> d;
  for (std::size_t i = 0; i < 3; ++i) {
    d.Xf[i] = xf[i].evaluate(pt);
    d.Yf[i] = yf[i].evaluate(pt);
    for (std::size_t j = 0; j < 3; ++j) {
      d.XXf[i][j] = xxf[i][j].evaluate(pt);
      d.XYf[i][j] = xyf[i][j].evaluate(pt);
    }
  }
  return d;
}

} // namespace

PointDerivatives<Rational> DerivativeTable::at(const Point6Q& p) const
{
  return evaluate_table<Rational>(xf_, yf_, xxf_, xyf_, p);
}

PointDerivatives<double> DerivativeTable::at(const Point6& p) const
{
  return evaluate_table<double>(xf_, yf_, xxf_, xyf_, p);
}

PointDerivatives<Rational> derivatives_at(const MultiPoly& f, const Point6Q& p) { return DerivativeTable(f).at(p); }

Rational gamma2_at(const MultiPoly& f, const Point6Q& p) { return derivatives_at(f, p).gamma2(); }

Rational gamma2_lower_bound_gap(const PointDerivatives<Rational>& d, const Rational& lambda)
{
  if (!(lambda > 0))
    throw std::domain_error("gamma2_lower_bound_gap: lambda must be positive");
  Rational lf = d.lf();
  Rational ysq = d.Yf[0] * d.Yf[0] + d.Yf[1] * d.Yf[1] + d.Yf[2] * d.Yf[2];
  Rational bound = lf * lf / 3 + ysq / 2 - Rational(4) / lambda * d.gamma() - lambda * d.gamma_of_y();
  return d.gamma2() - bound;
}

Rational gamma2_lower_bound_gap(const MultiPoly& f, const Rational& lambda, const Point6Q& p)
{
  return gamma2_lower_bound_gap(derivatives_at(f, p), lambda);
}

bool is_radial(const MultiPoly& f)
{
  for (std::size_t i = 0; i < 3; ++i)
    if (!vf_apply(theta(i), f).is_zero())
      return false;
  return true;
}

MultiPoly random_poly(std::uint64_t seed, int max_degree, double density, int coef_range)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  std::uniform_int_distribution<int> coef(-coef_range, coef_range);
  MultiPoly p;
  MultiPoly::Exponent e{};
  // odometer over exponents with total degree <= max_degree
  std::function<void(std::size_t, int)> walk = [&](std::size_t var, int left) {
    if (var == 6) {
      if (keep(rng) < density)
        p.add_term(e, Rational(coef(rng)));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[var] = static_cast<std::int8_t>(k);
      walk(var + 1, left - k);
    }
    e[var] = 0;
  };
  walk(0, max_degree);
  return p;
}

Point6Q random_rational_point(std::uint64_t seed, int num_range, int den_max)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> den(1, den_max);
  Point6Q p;
  for (std::size_t k = 0; k < 6; ++k) {
    int d = den(rng);
    std::uniform_int_distribution<int> num(-num_range * d, num_range * d);
    p[k] = Rational(num(rng), d);
    p[k].canonicalize();
  }
  return p;
}

} // namespace n32::algebra
