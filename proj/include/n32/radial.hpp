#pragma once

// Reduction of radial functions f(x,y) = g(r1, r2, z), with r1 = |x|^2,
// r2 = |y|^2, z = x.y. The reduced operators are written once as templates
// over the scalar type so the same text serves double evaluation, exact
// rational evaluation and the formal jet calculus.

#include "n32/algebra.hpp"
#include "n32/errors.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace n32::radial {

template <class T>
struct BasicRadialPoint {
  T r1{}, r2{}, z{};
  friend bool operator==(const BasicRadialPoint&, const BasicRadialPoint&) = default;
};
using RadialPoint = BasicRadialPoint<double>;
using RadialPointQ = BasicRadialPoint<Rational>;

/// Derivatives of g with respect to (r1, r2, z). Mixed partials have one slot.
template <class T>
struct RadialJet {
  T f1{}, f2{}, fz{};
  T f11{}, f12{}, f1z{}, f22{}, f2z{}, fzz{};
  /// f111 f112 f11z f122 f12z f1zz f222 f22z f2zz fzzz
  std::array<T, 10> third{};
};

/// Polynomial in (r1, r2, z).
using RadialPoly = Polynomial<3>;
inline constexpr std::array<std::string_view, 3> kRadialNames = {"r1", "r2", "z"};

// Constants and 1/r1 for each scalar type used with the templates below.
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static double constant(long num, long den = 1) { return static_cast<double>(num) / static_cast<double>(den); }
  static double reciprocal(double v) { return 1.0 / v; }
  static bool is_zero(double v) { return v == 0.0; }
};

template <>
struct ScalarOps<Rational> {
  static Rational constant(long num, long den = 1)
  {
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  static Rational reciprocal(const Rational& v) { return Rational(1) / v; }
  static bool is_zero(const Rational& v) { return v == 0; }
};

template <class T>
T cst(long num, long den = 1)
{
  return ScalarOps<T>::constant(num, den);
}

template <class T>
BasicRadialPoint<T> radial_coords(const BasicPoint6<T>& g)
{
  BasicRadialPoint<T> p;
  p.r1 = g.x[0] * g.x[0] + g.x[1] * g.x[1] + g.x[2] * g.x[2];
  p.r2 = g.y[0] * g.y[0] + g.y[1] * g.y[1] + g.y[2] * g.y[2];
  p.z = g.x[0] * g.y[0] + g.x[1] * g.y[1] + g.x[2] * g.y[2];
  return p;
}

/// Throws std::invalid_argument unless r1, r2 >= 0 and z^2 <= r1 r2 (with a
/// 1e-12 relative allowance for rounding).
void validate(const RadialPoint& p);

/// (sqrt r1, 0, 0, z/sqrt r1, 0, sqrt(r2 - z^2/r1)); for r1 = 0 the
/// representative is (0, 0, 0, sqrt r2, 0, 0).
Point6 canonical_point(const RadialPoint& p);

template <class T>
T lhat(const RadialJet<T>& j, const BasicRadialPoint<T>& p)
{
  const T d = p.r1 * p.r2 - p.z * p.z;
  return cst<T>(4) * p.r1 * j.f11 + d * j.f22 + p.r2 * j.fzz + cst<T>(4) * p.z * j.f1z + cst<T>(6) * j.f1 +
         p.r1 * j.f2;
}

template <class T>
T gammahat(const RadialJet<T>& a, const RadialJet<T>& b, const BasicRadialPoint<T>& p)
{
  const T d = p.r1 * p.r2 - p.z * p.z;
  return cst<T>(4) * p.r1 * a.f1 * b.f1 + d * a.f2 * b.f2 + p.r2 * a.fz * b.fz + cst<T>(2) * p.z * a.f1 * b.fz +
         cst<T>(2) * p.z * a.fz * b.f1;
}

/// The long expanded display of the reduced Gamma2.
template <class T>
T gammahat2_expanded(const RadialJet<T>& j, const BasicRadialPoint<T>& p)
{
  const T& r1 = p.r1;
  const T& r2 = p.r2;
  const T& z = p.z;
  const T d = r1 * r2 - z * z;
  T v = cst<T>(16) * r1 * r1 * j.f11 * j.f11;
  v = v + cst<T>(16) * r1 * j.f1 * j.f11;
  v = v + cst<T>(8) * r1 * d * j.f12 * j.f12;
  v = v + cst<T>(8) * d * j.f2 * j.f12;
  v = v + cst<T>(8) * (r1 * r2 + z * z) * j.f1z * j.f1z;
  v = v + cst<T>(32) * r1 * z * j.f11 * j.f1z;
  v = v + r1 * d * j.f2 * j.f22;
  v = v + d * d * j.f22 * j.f22;
  v = v + cst<T>(2) * d * j.fz * j.f2z;
  v = v + cst<T>(8) * z * d * j.f12 * j.f2z;
  v = v + (cst<T>(2) * r2 + cst<T>(1, 2) * r1 * r1) * j.f2 * j.f2;
  v = v + cst<T>(2) * r2 * d * j.f2z * j.f2z;
  v = v + r2 * r2 * j.fzz * j.fzz;
  v = v + cst<T>(4) * r2 * j.f1 * j.fzz;
  v = v + cst<T>(8) * r2 * z * j.f1z * j.fzz;
  v = v + cst<T>(16) * z * j.f1 * j.f1z;
  v = v + cst<T>(8) * z * z * j.f11 * j.fzz;
  v = v + cst<T>(12) * j.f1 * j.f1;
  v = v + cst<T>(1, 2) * r1 * j.fz * j.fz;
  v = v - cst<T>(4) * d * j.f1 * j.f22;
  v = v - cst<T>(4) * r1 * j.f1 * j.f2;
  v = v - d * j.f2 * j.fzz;
  v = v - cst<T>(2) * z * j.f2 * j.fz;
  return v;
}

template <class T>
struct SosTerms {
  T value{};
  /// Each entry is weight * square; all weights are nonnegative when
  /// r1 > 0 and r1 r2 >= z^2.
  std::array<T, 6> terms{};
};

/// Quadratic-form rewriting of the reduced Gamma2 as six weighted squares.
/// Two weights carry 1/r1, so r1 = 0 raises DegenerateError.
template <class T>
SosTerms<T> gammahat2_sos(const RadialJet<T>& j, const BasicRadialPoint<T>& p)
{
  if (ScalarOps<T>::is_zero(p.r1))
    throw DegenerateError("gammahat2_sos: r1 = 0; use gammahat2_expanded");
  const T& r1 = p.r1;
  const T& z = p.z;
  const T d = r1 * p.r2 - z * z;
  const T inv = ScalarOps<T>::reciprocal(r1);
  const T half = cst<T>(1, 2);
  SosTerms<T> s;
  T q0 = d * j.f22 + half * r1 * j.f2 - cst<T>(2) * j.f1;
  T q1 = j.f12 + half * inv * j.f2 + half * inv * z * j.f2z;
  T q2 = d * j.f2z + half * r1 * j.fz - z * j.f2;
  T q3 = half * r1 * j.f2 - cst<T>(2) * j.f1 - d * inv * j.fzz;
  T q4 = j.f1 + half * inv * z * z * j.fzz + cst<T>(2) * r1 * j.f11 + cst<T>(2) * z * j.f1z;
  T q5 = z * inv * j.fzz + cst<T>(2) * j.f1z;
  s.terms[0] = q0 * q0;
  s.terms[1] = cst<T>(8) * r1 * d * q1 * q1;
  s.terms[2] = cst<T>(2) * inv * q2 * q2;
  s.terms[3] = q3 * q3;
  s.terms[4] = cst<T>(4) * q4 * q4;
  s.terms[5] = cst<T>(2) * d * q5 * q5;
  s.value = s.terms[0];
  for (std::size_t k = 1; k < 6; ++k)
    s.value = s.value + s.terms[k];
  return s;
}

/// Jet of a radial polynomial at a point, through third order.
template <class T>
RadialJet<T> jet_of(const RadialPoly& f, const BasicRadialPoint<T>& p)
{
  const std::array<T, 3> a = {p.r1, p.r2, p.z};
  std::span<const T, 3> pt(a);
  auto ev = [&](const RadialPoly& q) { return q.evaluate(pt); };
  const RadialPoly d1 = f.derivative(0), d2 = f.derivative(1), dz = f.derivative(2);
  const RadialPoly d11 = d1.derivative(0), d12 = d1.derivative(1), d1z = d1.derivative(2);
  const RadialPoly d22 = d2.derivative(1), d2z = d2.derivative(2), dzz = dz.derivative(2);
  RadialJet<T> j;
  j.f1 = ev(d1);
  j.f2 = ev(d2);
  j.fz = ev(dz);
  j.f11 = ev(d11);
  j.f12 = ev(d12);
  j.f1z = ev(d1z);
  j.f22 = ev(d22);
  j.f2z = ev(d2z);
  j.fzz = ev(dzz);
  j.third = {ev(d11.derivative(0)), ev(d11.derivative(1)), ev(d11.derivative(2)), ev(d12.derivative(1)),
             ev(d12.derivative(2)), ev(d1z.derivative(2)), ev(d22.derivative(1)), ev(d22.derivative(2)),
             ev(d2z.derivative(2)), ev(dzz.derivative(2))};
  return j;
}

algebra::MultiPoly lift_radial(const RadialPoly& f);

/// Random polynomial in (r1, r2, z) of total degree <= max_degree with small
/// integer coefficients.
RadialPoly random_radial_poly(std::uint64_t seed, int max_degree, double density = 0.6, int coef_range = 3);

/// Differences (full - reduced) for L, Gamma and Gamma2 at g; exact zeros.
std::array<Rational, 3> consistency_check(const RadialPoly& f, const Point6Q& g);

/// Residuals of the three constraints theta_i f = 0 written in the X/Y frame
/// followed by the nine equations obtained by applying X_i, X_{i+1}, X_{i+2}.
/// Indices: [0..2] constraints, [3 + 3i + k] equation k of block i.
std::array<Rational, 12> nine_equations_residual(const algebra::MultiPoly& f, const Point6Q& g);
std::array<Rational, 12> nine_equations_residual(const RadialPoly& f, const Point6Q& g);

struct FirstProofCertificate {
  Rational gamma_norm2; ///< |gamma|^2
  Rational lhs;         ///< |gamma|^2 Gamma2(f)(g)
  Rational rhs;         ///< sum of the twelve squares
  Rational residual;    ///< lhs - rhs
  std::array<Rational, 3> beta_terms;  ///< (2 beta_i - A_i)^2
  std::array<Rational, 9> cross_terms; ///< indexed 3i + j
  /// X_i Y_{i+1} f and X_i Y_{i+2} f from the closed forms minus direct values.
  std::array<Rational, 6> closed_form_residuals;
};

/// Throws DegenerateError when |gamma|^2 = 0 (x parallel to y).
FirstProofCertificate first_proof_certificate(const algebra::MultiPoly& f, const Point6Q& g);
FirstProofCertificate first_proof_certificate(const RadialPoly& f, const Point6Q& g);

/// Formal jet calculus: residual of
///   (1/2)(Lhat Gammahat(f,f) - 2 Gammahat(f, Lhat f)) - expanded display
/// as a polynomial in (r1, r2, z, f, jets through order 3).
using JetPoly = Polynomial<23>;
extern const std::array<std::string_view, 23> kJetNames;

struct FormalReport {
  JetPoly definitional;       ///< (1/2)(Lhat Gammahat(f,f) - 2 Gammahat(f, Lhat f))
  JetPoly expanded_residual;  ///< definitional - expanded display
  JetPoly sos_residual;       ///< r1 * (sos display - expanded display)
  JetPoly r1_only_residual;   ///< definitional restricted to f = f(r1), minus 16 r1^2 f11^2 + 16 r1 f1 f11 + 12 f1^2
  bool third_order_cancels;   ///< no third-order jet symbol survives in `definitional`
};

FormalReport gammahat2_formal_check();
JetPoly gammahat2_formal_residual();

} // namespace n32::radial
