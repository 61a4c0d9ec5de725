#pragma once

// Carnot-Caratheodory distance by normal-geodesic shooting, bracketed by
// explicit lower and upper bounds.
//
// With covector (p, eta) the horizontal velocity h = p - x cross eta / 2
// obeys h' = eta cross h and eta is constant, so normal geodesics from the
// origin rotate h about eta; x and y have closed forms.

#include "n32/errors.hpp"
#include "n32/group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace n32::geodesy {

/// (q, xi) with xi = (p, eta) dual to (x, y).
struct CotangentState {
  Point6 q;
  std::array<double, 6> xi{};
};

/// H = 1/2 sum <xi, X_i(q)>^2
double hamiltonian(const CotangentState& s);

struct FlowResult {
  CotangentState end;
  double arc_length = 0;
  double h_drift = 0; ///< max |H(t) - H(0)| / H(0) along the path
  int steps = 0;
};

/// Fixed-step RK4 on the canonical equations from the origin. steps = 0
/// picks a step with |eta| dt <= 0.005. Throws ConvergenceError if the
/// relative H drift exceeds 1e-8 per unit time.
FlowResult exp_map(const std::array<double, 6>& xi0, double T, int steps = 0);

/// Closed-form endpoint of the same flow at time 1.
Point6 exp_closed(const std::array<double, 3>& h0, const std::array<double, 3>& eta);

/// Heisenberg distance for horizontal displacement r >= 0 and area a:
/// circular arcs with turning angle in [0, 2 pi).
double heisenberg_distance(double r, double area);

struct Bounds {
  double lower = 0, upper = 0;
};

/// lower: max of |x| and the Heisenberg distances of the coordinate
/// projections (x_{i+1}, x_{i+2}; y_i), in the given and two adapted frames.
/// upper: straight segment to x then one planar loop per y component, in the
/// given frame and in a frame aligned with y.
Bounds distance_bounds(const Point6& g);

enum class Status {
  converged, ///< at least two restarts agree on the minimum within 1e-9
  single,    ///< only one restart reached the minimum
  degraded,  ///< no shooting solution at or below the upper bound; d = upper
};
std::string to_string(Status s);

struct Distance {
  double d = 0;
  Status status = Status::degraded;
  Bounds bounds;
  int solutions = 0; ///< restarts that hit the target
  int agreeing = 0;  ///< of which within 1e-9 of the minimum
  std::array<double, 3> h0{}, eta{}; ///< minimizing covector (time 1) in the canonical frame
};

/// Multi-start Levenberg-Marquardt on the closed-form endpoint map. Works in
/// the rotation-canonical frame at unit gauge and rescales. Throws
/// std::invalid_argument for restarts < 1.
Distance cc_distance(const Point6& g, int restarts = 64);

struct GaugeConstants {
  double min_ratio = 0, max_ratio = 0; ///< of d / (|x|^4 + |y|^2)^{1/4}
  int samples = 0;
  int degraded = 0;
};
GaugeConstants gauge_constants(int samples, std::uint64_t seed, int restarts = 64);

} // namespace n32::geodesy
