#pragma once

#include "n32/rational.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace n32 {

/// Subscripts are cyclic in {0,1,2}: next(i) is "i+1", after(i) is "i+2".
constexpr std::size_t next(std::size_t i) { return (i + 1) % 3; }
constexpr std::size_t after(std::size_t i) { return (i + 2) % 3; }
constexpr std::size_t cyc(std::size_t i) { return i % 3; }

/// Element (x1,x2,x3,y1,y2,y3) of the three-Brownian-motions group.
/// y holds the three Levy-area slots.
template <class T>
struct BasicPoint6 {
  std::array<T, 3> x{};
  std::array<T, 3> y{};

  static BasicPoint6 from_array(const std::array<T, 6>& a)
  {
    return {{a[0], a[1], a[2]}, {a[3], a[4], a[5]}};
  }

  std::array<T, 6> to_array() const { return {x[0], x[1], x[2], y[0], y[1], y[2]}; }

  const T& operator[](std::size_t k) const { return k < 3 ? x[k] : y[k - 3]; }
  T& operator[](std::size_t k) { return k < 3 ? x[k] : y[k - 3]; }

  friend bool operator==(const BasicPoint6&, const BasicPoint6&) = default;
};

using Point6 = BasicPoint6<double>;
using Point6Q = BasicPoint6<Rational>;

/// Group law: x adds, y_i picks up (x_{i+1} x'_{i+2} - x_{i+2} x'_{i+1}) / 2.
template <class T>
BasicPoint6<T> multiply(const BasicPoint6<T>& a, const BasicPoint6<T>& b)
{
  BasicPoint6<T> r;
  for (std::size_t i = 0; i < 3; ++i) {
    r.x[i] = a.x[i] + b.x[i];
    T area = a.x[next(i)] * b.x[after(i)] - a.x[after(i)] * b.x[next(i)];
    r.y[i] = a.y[i] + b.y[i] + area / T(2);
  }
  return r;
}

template <class T>
BasicPoint6<T> inverse(const BasicPoint6<T>& g)
{
  BasicPoint6<T> r;
  for (std::size_t i = 0; i < 3; ++i) {
    r.x[i] = -g.x[i];
    r.y[i] = -g.y[i];
  }
  return r;
}

template <class T>
BasicPoint6<T> identity_element()
{
  return BasicPoint6<T>{};
}

/// Dilation (x, y) -> (lambda x, lambda^2 y); lambda must be positive.
template <class T>
BasicPoint6<T> dilate(const T& lambda, const BasicPoint6<T>& g)
{
  if (!(lambda > 0))
    throw std::domain_error("dilate: lambda must be positive");
  BasicPoint6<T> r;
  T l2 = lambda * lambda;
  for (std::size_t i = 0; i < 3; ++i) {
    r.x[i] = lambda * g.x[i];
    r.y[i] = l2 * g.y[i];
  }
  return r;
}

/// Horizontal element (v, 0): the increment along exp(sum v_i X_i).
template <class T>
BasicPoint6<T> horizontal(const std::array<T, 3>& v)
{
  return BasicPoint6<T>{v, {T(0), T(0), T(0)}};
}

inline Point6 to_double(const Point6Q& q)
{
  Point6 p;
  for (std::size_t k = 0; k < 6; ++k)
    p[k] = q[k].get_d();
  return p;
}

inline double norm(const std::array<double, 3>& v) { return std::hypot(v[0], v[1], v[2]); }

inline double dot(const std::array<double, 3>& a, const std::array<double, 3>& b)
{
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b)
{
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Applies the same orthogonal 3x3 matrix to x and y (row-major).
inline Point6 rotate(const std::array<double, 9>& u, const Point6& g)
{
  Point6 r;
  for (std::size_t i = 0; i < 3; ++i) {
    r.x[i] = u[3 * i] * g.x[0] + u[3 * i + 1] * g.x[1] + u[3 * i + 2] * g.x[2];
    r.y[i] = u[3 * i] * g.y[0] + u[3 * i + 1] * g.y[1] + u[3 * i + 2] * g.y[2];
  }
  return r;
}

} // namespace n32
