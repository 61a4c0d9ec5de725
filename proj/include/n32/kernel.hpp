#pragma once

// Heat kernel of the sub-Laplacian from its Fourier representation in the
// vertical variable:
//
//   p1_raw(x, y) = (2 pi)^{-15/2} \int_{R^3} cos(y.a) (|a|/2)/sinh(|a|/2)
//                  exp(-|x|^2/2 - h(|a|) (|x|^2 - (x.a~)^2)/2) da,
//   h(r) = (r/2) coth(r/2) - 1,  a~ = a/|a|.
//
// The printed formula is the density of exp(L/2) at time 1 up to the factor
// (2 pi)^{-3}; p1/p_t below are the densities of exp(tL) (see kernel.cpp).

#include "n32/group.hpp"
#include "n32/errors.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace n32::kernel {

enum class Scheme {
  spherical_bessel, ///< GL in |a| and cos(angle to x); azimuth integrated in closed form (Bessel J0/J1)
  tensor_gl,        ///< GL in |a|, cos(angle) and azimuth; independent cross-check
};

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct QuadratureSpec {
  double truncation_radius = 90.0; ///< integrate over |a| <= R
  int nodes_per_axis = 16;         ///< Gauss-Legendre nodes per panel, every axis
  double panel_width = 2.0;        ///< maximal radial panel width
  double max_phase = 6.0;          ///< maximal oscillation phase per panel (radians)
  Scheme scheme = Scheme::spherical_bessel;
  double tolerance = 1e-9;         ///< convergence gate, relative to p1_raw(0)
  double floor = 1e-300;           ///< absolute floor for log-derivatives

  QuadratureSpec doubled() const;
  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

struct KernelValue {
  double value = 0;
  double imag_leak = 0; ///< |integral of the sine part| (zero in exact arithmetic)
  double abs_mass = 0;  ///< integral of |integrand|, the scale of cancellation
  QuadratureSpec spec;
};

/// Value and the six Euclidean partial derivatives (d/dx1..3, d/dy1..3).
struct KernelJet {
  KernelValue value;
  std::array<double, 6> grad{};
};

inline constexpr double kPi = 3.14159265358979323846;
/// (2 pi)^{-15/2}
double raw_prefactor();
/// (2 pi)^{-15/2} 4 pi^5 = p1_raw(0, 0)
double raw_value_at_origin();
/// Exact integral of p1_raw over R^6, (2 pi)^{-3}.
double raw_total_mass();

struct ConvergenceReport {
  bool passed = false;
  double max_change = 0; ///< max |p(spec) - p(doubled)| / p1_raw(0) over the reference set
  std::vector<std::array<double, 6>> points;
  std::vector<double> values, doubled_values;
};

/// Doubles the node count and compares on a fixed reference set. Results are
/// cached per spec.
ConvergenceReport convergence_check(const QuadratureSpec& spec);
/// Throws ConvergenceError with a diagnostic if the gate fails.
void require_converged(const QuadratureSpec& spec);

KernelValue p1_raw(const std::array<double, 3>& x, const std::array<double, 3>& y, const QuadratureSpec& spec = {});
KernelJet p1_raw_jet(const std::array<double, 3>& x, const std::array<double, 3>& y, const QuadratureSpec& spec = {});
/// Same integrals without the gate (used by the gate itself and by tests).
KernelJet p1_raw_jet_unchecked(const std::array<double, 3>& x, const std::array<double, 3>& y,
                               const QuadratureSpec& spec, bool with_gradient);

/// Density of exp(L) at time 1: 2^{-9/2} (2 pi)^3 p1_raw(x/sqrt 2, y/2).
double p1(const Point6& g, const QuadratureSpec& spec = {});
/// Gradient of p1 in Euclidean coordinates.
std::array<double, 6> grad_p1(const Point6& g, const QuadratureSpec& spec = {});
/// p_t(g) = t^{-9/2} p1(x/sqrt t, y/t). Throws std::domain_error for t <= 0.
double p_t(double t, const Point6& g, const QuadratureSpec& spec = {});
std::array<double, 6> grad_p_t(double t, const Point6& g, const QuadratureSpec& spec = {});

/// x A^2 x^t with the antisymmetric matrix built from a, and the
/// cross-product form -(|a|^2 |x|^2 - (x.a)^2) it reduces to. Returns both.
std::array<double, 2> xa2x_forms(const std::array<double, 3>& x, const std::array<double, 3>& a);
/// The matrix exactly as printed (entries a1, -a2, a3 off the diagonal).
std::array<double, 9> printed_a_matrix(const std::array<double, 3>& a);

struct HorizontalGradient {
  std::array<double, 3> X{}; ///< X_i log p_t
  double magnitude = 0;      ///< sqrt(Gamma(log p_t))
  std::array<double, 3> Y{}; ///< Y_i log p_t
  double value = 0;          ///< p_t(g)
};

/// Throws UnderflowError when p_t(g) is below the spec floor or below the
/// quadrature noise level.
HorizontalGradient horiz_grad_log_pt(double t, const Point6& g, const QuadratureSpec& spec = {});

struct HeatResidualOptions {
  double step = 2.5e-3;     ///< relative step for t and for the flows (scaled by sqrt t); error is O(step^2)
  bool mis_scaled = false;  ///< negative control: t^{-4} p1(x/sqrt t, y/t)
};

/// |d_t p_t - L p_t| / p_t by central differences.
double heat_residual(double t, const Point6& g, const QuadratureSpec& spec = {}, HeatResidualOptions opt = {});

struct WConstants {
  double W1 = 0, W2 = 0;
};
WConstants constants_W(const QuadratureSpec& spec = {});

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes, weights;
};
const GaussRule& gauss_rule(int n);

struct NormalizationOptions {
  std::size_t samples = 2000;
  std::uint64_t seed = 1;
  double coupled_fraction = 0.3;    ///< mixture weight on Gaussian y with x-variance 2(1 + |y|)
  double heavy_tail_fraction = 0.4; ///< mixture weight on Student-t y with x-variance 2(1 + |y|)
  double student_nu = 3.0;
  QuadratureSpec spec = QuadratureSpec{.truncation_radius = 70.0, .nodes_per_axis = 12, .tolerance = 1e-6};
};

struct MeanEstimate {
  double mean = 0;
  double stderr_ = 0;
};

struct NormalizationReport {
  MeanEstimate raw_integral;  ///< integral of p1_raw
  MeanEstimate ratio_to_exact; ///< raw_integral / (2 pi)^{-3}
  /// Moments of p1 (= exp(L) at t = 1): mass, E r1, E r2, E z.
  MeanEstimate mass, r1, r2, z;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Importance-sampling audit of the printed prefactor and of the moment table.
NormalizationReport normalization(const NormalizationOptions& opt = {});

/// Importance estimator with the target equal to the importance density; 1 exactly.
double importance_self_check(std::size_t samples, std::uint64_t seed);

} // namespace n32::kernel
