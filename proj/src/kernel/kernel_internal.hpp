#pragma once

#include "n32/kernel.hpp"

#include <vector>

namespace n32::kernel::detail {

/// Orthonormal frame with e1 along x (or y when x = 0) and y in span(e1, e2).
struct Frame {
  double xn = 0;
  double ypar = 0, yperp = 0;
  std::array<double, 3> e1{}, e2{}, e3{};
};

double sinhc_half(double r);
double coth_excess(double r);
Frame make_frame(const std::array<double, 3>& x, const std::array<double, 3>& y);
std::vector<double> radial_breaks(const QuadratureSpec& spec, const Frame& f);
std::vector<double> tau_breaks(double r, const QuadratureSpec& spec, const Frame& f, double c);

KernelJet integrate(const std::array<double, 3>& x, const std::array<double, 3>& y, const QuadratureSpec& spec,
                    bool with_gradient);

/// 2^{-9/2} (2 pi)^3: p1(g) = bridge * p1_raw(x / sqrt 2, y / 2).
double bridge_factor();

} // namespace n32::kernel::detail
