#pragma once

#include "n32/group.hpp"
#include "n32/polynomial.hpp"

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace n32::algebra {

/// Polynomial in (x1,x2,x3,y1,y2,y3), in that variable order.
using MultiPoly = Polynomial<6>;

inline constexpr std::array<std::string_view, 6> kCoordNames = {"x1", "x2", "x3", "y1", "y2", "y3"};

MultiPoly x(std::size_t i);
MultiPoly y(std::size_t i);
/// r1 = |x|^2, r2 = |y|^2, z = x.y
MultiPoly r1();
MultiPoly r2();
MultiPoly zdot();

std::string to_string(const MultiPoly& p);

/// First-order operator sum_k coef[k] d/d(coord k); slots 0..2 are d/dx_i,
/// slots 3..5 are d/dy_i.
struct VectorField {
  std::array<MultiPoly, 6> coef;

  MultiPoly operator()(const MultiPoly& f) const;
  bool is_zero() const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Rational& s, const VectorField& v);
  friend bool operator==(const VectorField&, const VectorField&) = default;
};

/// Left-invariant horizontal field X_i = d_i - (x_{i+1}/2) dy_{i+2} + (x_{i+2}/2) dy_{i+1}.
VectorField X(std::size_t i);
/// Y_i = dy_i.
VectorField Y(std::size_t i);
/// Right-invariant field Xhat_i = d_i + (x_{i+1}/2) dy_{i+2} - (x_{i+2}/2) dy_{i+1}.
VectorField Xhat(std::size_t i);
/// Rotation theta_i = x_{i+1} d_{i+2} - x_{i+2} d_{i+1} + y_{i+1} dy_{i+2} - y_{i+2} dy_{i+1}.
VectorField theta(std::size_t i);
/// Dilation generator D = (1/2) sum x_i d_i + sum y_i dy_i.
VectorField dilation_field();

MultiPoly vf_apply(const VectorField& v, const MultiPoly& f);
VectorField lie_bracket(const VectorField& v, const VectorField& w);

MultiPoly sublaplacian(const MultiPoly& f);
MultiPoly gamma(const MultiPoly& f, const MultiPoly& g);
/// Definitional form (1/2)(L Gamma(f,f) - 2 Gamma(f, Lf)).
MultiPoly gamma2(const MultiPoly& f);
/// sum_{ij} (X_i X_j f)^2 - 2 sum_i X_i f (X_{i+1} Y_{i+2} f - Y_{i+1} X_{i+2} f)
MultiPoly gamma2_bochner(const MultiPoly& f);
/// sum (X_i^2 f)^2 + 1/2 sum (Y_i f)^2 + 2 sum (D_{i,i+1} f)^2
///   + 2 sum (X_i f X_{i+2} Y_{i+1} f - X_{i+2} f X_i Y_{i+1} f)
MultiPoly gamma2_symmetrized(const MultiPoly& f);
/// gamma2_bochner(f) - gamma2_symmetrized(f); zero for every f.
MultiPoly gamma2_forms_equal(const MultiPoly& f);

/// Values of the first and second horizontal/vertical derivatives of f at one
/// point; enough to evaluate L, Gamma, Gamma2 pointwise without expanding
/// products of polynomials.
template <class T>
struct PointDerivatives {
  std::array<T, 3> Xf{};
  std::array<T, 3> Yf{};
  std::array<std::array<T, 3>, 3> XXf{}; ///< XXf[i][j] = X_i X_j f
  std::array<std::array<T, 3>, 3> XYf{}; ///< XYf[i][j] = X_i Y_j f

  T lf() const { return XXf[0][0] + XXf[1][1] + XXf[2][2]; }
  T gamma() const { return Xf[0] * Xf[0] + Xf[1] * Xf[1] + Xf[2] * Xf[2]; }
  T gamma2() const;
  /// sum_i Gamma(Y_i f) = sum_{ij} (X_j Y_i f)^2
  T gamma_of_y() const;
};

PointDerivatives<Rational> derivatives_at(const MultiPoly& f, const Point6Q& p);

/// Reusable derivative polynomials; evaluate at many points cheaply.
class DerivativeTable {
public:
  explicit DerivativeTable(const MultiPoly& f);
  PointDerivatives<Rational> at(const Point6Q& p) const;
  PointDerivatives<double> at(const Point6& p) const;

private:
  std::array<MultiPoly, 3> xf_, yf_;
  std::array<std::array<MultiPoly, 3>, 3> xxf_, xyf_;
};

Rational gamma2_at(const MultiPoly& f, const Point6Q& p);

/// Gamma2(f)(p) - [ (Lf)^2/3 + (1/2) sum (Y_i f)^2 - (4/lambda) Gamma(f) - lambda sum Gamma(Y_i f) ](p).
/// Nonnegative for every f, lambda > 0, p.
Rational gamma2_lower_bound_gap(const MultiPoly& f, const Rational& lambda, const Point6Q& p);
Rational gamma2_lower_bound_gap(const PointDerivatives<Rational>& d, const Rational& lambda);

bool is_radial(const MultiPoly& f);

/// Coefficients of an operator of order <= 2:
///   zeroth * f + sum_a first[a] d_a f + sum_{a<=b} second[a][b] d_a d_b f.
/// Determined by the action on 1, u_a and u_a u_b.
struct SecondOrderOperator {
  MultiPoly zeroth;
  std::array<MultiPoly, 6> first;
  std::array<std::array<MultiPoly, 6>, 6> second; ///< only a <= b filled

  bool is_zero() const;
  friend bool operator==(const SecondOrderOperator&, const SecondOrderOperator&) = default;
};

SecondOrderOperator extract_operator(const std::function<MultiPoly(const MultiPoly&)>& op);
/// Coefficients of L itself.
SecondOrderOperator sublaplacian_operator();
/// Coefficients of [L, V] = L V - V L.
SecondOrderOperator commutator_with_sublaplacian(const VectorField& v);

/// Basis of {V : coefficients polynomial of degree <= max_degree, [L,V] = 0},
/// from the exact nullspace of the linear system in the coefficient space.
std::vector<VectorField> commutant_basis(int max_degree);

/// Rank of a family of vector fields over the rationals.
std::size_t span_rank(const std::vector<VectorField>& fields);

/// {Xhat_i, theta_i, Y_i}.
std::vector<VectorField> stock_commutant();

/// Random polynomial in the six coordinates with small integer coefficients,
/// each monomial of degree <= max_degree kept with probability `density`.
MultiPoly random_poly(std::uint64_t seed, int max_degree, double density = 0.4, int coef_range = 3);
Point6Q random_rational_point(std::uint64_t seed, int num_range = 2, int den_max = 4);

} // namespace n32::algebra
