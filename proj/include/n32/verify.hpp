#pragma once

// Empirical audits of the functional inequalities. Constants that the
// statements only assert to exist are reported as empirical values on a
// pinned grid; nothing here claims sharpness.

#include "n32/algebra.hpp"
#include "n32/json_io.hpp"
#include "n32/kernel.hpp"
#include "n32/radial.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace n32::verify {

/// A test function with its carre du champ Gamma(f) = sum (X_i f)^2.
struct TestFunction {
  std::string name;
  std::function<double(const Point6&)> value;
  std::function<double(const Point6&)> gamma;
  bool radial = false;
};

TestFunction from_polynomial(const algebra::MultiPoly& f, std::string name);

/// (offset + F(r1, r2, z)) * bump((r1^2 + r2) / R^4), bump(q) = exp(1 - 1/(1 - q))
/// on q < 1. Smooth, radial and compactly supported (gauge radius R).
TestFunction radial_window(const radial::RadialPoly& F, double offset, double radius, std::string name);

struct McConfig {
  std::size_t n_paths = 20000;
  double dt = 0.01;
  std::uint64_t seed = 1;
  double eps = 0.05; ///< finite-difference step for X_i P_t f, times sqrt t
  int groups = 20;   ///< jackknife groups
};

struct Estimate {
  double value = 0;
  double stderr_ = 0;
};

struct SemigroupResult {
  Estimate value;               ///< P_t f(g)
  std::array<Estimate, 3> X{};  ///< X_i P_t f(g)
  Estimate gamma;               ///< Gamma(P_t f)(g)
  double eps = 0;
  /// max_i |X_i(eps) - X_i(eps/2)| / stderr: FD bias in units of noise
  double fd_halving_shift = 0;
  bool variance_flag = false; ///< non-finite values or one path carrying > 50% of the sum of squares
};

/// P_t f(g) = E f(g o G_t) with G_t from the sampler; X_i P_t f by central
/// differences along g -> g o (eps e_i, 0) with common random numbers.
SemigroupResult semigroup_apply(const TestFunction& f, double t, const Point6& g, const McConfig& cfg,
                                bool derivatives = true);

enum class Verdict { satisfied, indeterminate, violated };
std::string to_string(Verdict v);
/// gap >= 0 satisfied; -3 se <= gap < 0 indeterminate; below that violated.
Verdict verdict_of(const Estimate& gap);

struct PointRecord {
  double t = 0;
  Point6 g;
  std::string label;
  double lhs = 0, rhs = 0; ///< the two sides of the audited inequality
  double value = 0;        ///< ratio or gap, depending on the audit
  double stderr_ = 0;
  std::string verdict;
};

struct VerifyReport {
  std::string inequality;
  std::vector<PointRecord> points;
  std::vector<PointRecord> excluded; ///< underflow or near-origin points, with the reason in label
  std::map<std::string, double> constants;
  std::vector<std::vector<double>> feasible; ///< Li-Yau (C1, C2, C3) / Harnack frontier (A1, A2)
  std::map<std::string, double> tolerances;
  std::vector<std::string> notes;
  double worst_margin = 0;
  bool passed = false;
};

Json to_json(const VerifyReport& r);

// ---- kernel-based audits --------------------------------------------------

struct GradientScanOptions {
  kernel::QuadratureSpec spec{};
  int restarts = 64;
  double exclusion = 0.05;       ///< skip d(g)/sqrt t below this
  bool check_invariance = true;  ///< compare against (1, delta_{1/sqrt t} g)
};

/// Ratio t sqrt(Gamma(log p_t))(g) / d(g); C_emp = max. Also the intermediate
/// form sqrt(Gamma(log p_t)) / (d/t + 1/sqrt t) without exclusion, and the
/// dilation-invariance diagnostic (constants "invariance_max_rel").
VerifyReport gradient_ratio_scan(const std::vector<double>& t_list, const std::vector<Point6>& grid,
                                 const GradientScanOptions& opt = {});

struct HarnackSample {
  double t1 = 0, t2 = 0;
  Point6 g1, g2;
};

/// Feasible (A1, A2) >= 0 with log(p_t1(g1)/p_t2(g2)) <= A1 log(t2/t1) +
/// A2 d^2(g1, g2)/(t2 - t1) on every sample: exact LP by vertex enumeration.
/// Reports the Pareto frontier, the vertex minimizing A1 + A2, and the
/// origin-slice lower bound on A1.
VerifyReport harnack_fit(const std::vector<HarnackSample>& samples, const kernel::QuadratureSpec& spec = {},
                         int restarts = 64);

/// Pairs over t in t_list (t1 < t2) and grid points (including g1 = g2 = 0).
std::vector<HarnackSample> harnack_samples(const std::vector<double>& t_list, const std::vector<Point6>& grid);

struct ConstantsGrid {
  std::vector<double> C1{0.01, 0.05, 0.1, 0.2, 0.25, 0.5};
  std::vector<double> C2{0.0, 0.01, 0.05, 0.1, 0.5};
  std::vector<double> C3{4.5, 5, 6, 8, 10, 15, 20, 40};
};

/// Feasible (C1, C2, C3) in the grid for
///   d_t u >= C1 Gamma(u) + C2 t sum |Y_i u|^2 - C3 / t,   u = log p_t,
/// at every grid point; plus the origin-slice bound C3 >= -t d_t u(0).
VerifyReport li_yau_scan(const std::vector<double>& t_list, const std::vector<Point6>& grid,
                         const ConstantsGrid& constants = {}, const kernel::QuadratureSpec& spec = {});

// ---- Monte Carlo audits ---------------------------------------------------

/// Gamma(P_t f)(0) / P_t(Gamma f)(0) over a family; C_emp = max ratio.
VerifyReport driver_melcher_ratio(const std::vector<TestFunction>& family, double t, const McConfig& cfg);

/// (3/2)(P_t f^2 - (P_t f)^2) - t Gamma(P_t f) at 0; each gap >= -3 stderr.
VerifyReport reverse_poincare_gap(const std::vector<TestFunction>& family, double t, const McConfig& cfg);

/// For radial f at g: (i) P_t sqrt(Gamma f) - sqrt(Gamma(P_t f));
/// (ii) t P_t(Gamma f / f) - [P_t(f log f) - P_t f log P_t f];
/// (iii) 4 sqrt t P_t(sqrt(Gamma f)) - P_t(|f - P_t f(g)|). Throws
/// std::invalid_argument for non-radial f or f < 0 on a sampled point.
VerifyReport radial_inequality_gaps(const std::vector<TestFunction>& family, double t, const Point6& g,
                                    const McConfig& cfg);

/// Polynomial family used by the CLI and the acceptance run.
std::vector<TestFunction> default_polynomial_family();
/// Radial windowed family: r1, r2 + z, 1 + r1 r2, each on a bump.
std::vector<TestFunction> default_radial_family();
/// Points on the unit gauge sphere (|x|^4 + |y|^2 = 1), deterministic.
std::vector<Point6> gauge_sphere_points(int n, std::uint64_t seed);

} // namespace n32::verify
