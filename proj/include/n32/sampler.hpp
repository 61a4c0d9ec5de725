#pragma once

// Monte Carlo for the diffusion generated by L: three Brownian motions and
// their Levy areas, built by composing Gaussian increments through the group
// law. Increments have variance 2 dt, so a batch at time t samples p_t of
// exp(tL) (standard motions run to time 2t).

#include "n32/group.hpp"
#include "n32/kernel.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace n32::sampler {

/// Paths are grouped in blocks of this size; block b draws from
/// mt19937_64(seed_seq{seed, b}). Output is independent of the thread count.
inline constexpr std::size_t kBlockSize = 1024;
inline constexpr const char* kStreamRule = "mt19937_64/seed_seq(seed,block)/block=1024";

struct SimConfig {
  double t = 1.0;
  double dt = 1e-3;
  std::size_t n_paths = 100000;
  std::uint64_t seed = 1;
};

struct Stat {
  double mean = 0;
  double stderr_ = 0;
};

struct Moments {
  std::size_t n = 0;
  Stat r1, r2, z;          ///< first radial moments
  Stat r1sq, r2sq, zsq;    ///< second radial moments
  std::array<Stat, 6> coord; ///< E x_i, E y_i
};

struct SampleBatch {
  SimConfig config;
  std::size_t steps = 0;
  double dt_used = 0;       ///< t / steps
  bool dt_adjusted = false; ///< t/dt was not an integer and the step was rounded
  std::vector<Point6> samples;
  Moments moments;
};

/// Number of steps for a config: round(t/dt), at least 1. Throws
/// std::invalid_argument on nonpositive t, dt or n_paths.
std::size_t step_count(const SimConfig& cfg);

/// s o (dB, 0).
Point6 step(const Point6& s, const std::array<double, 3>& dB);

SampleBatch simulate(const SimConfig& cfg, unsigned threads = 0);

Moments moments(const std::vector<Point6>& samples);

struct MomentComparison {
  std::string name;
  Stat a, b;
  double zscore = 0;
};

struct DilationReport {
  double lambda = 1;
  SimConfig base, fresh;
  Moments pushed, fresh_moments;
  std::vector<MomentComparison> comparisons;
  bool passed = false;
  bool identical = false; ///< pushed and fresh batches equal bit for bit
};

/// delta_lambda applied to a batch at time t versus a fresh batch at lambda^2 t
/// (same dt, same seed). Passes when every radial first/second moment agrees
/// within 3 standard errors of the difference.
DilationReport dilation_distribution_check(const SimConfig& cfg, double lambda, unsigned threads = 0);

struct KdePoint {
  Point6 point;
  double r1 = 0, r2 = 0, z = 0;
  double kernel_density = 0; ///< 2 pi^2 p_t(g): density of (r1, r2, z)
  double kde = 0;
  double rel_discrepancy = 0; ///< kde / kernel_density - 1
  double ci_lo = 0, ci_hi = 0; ///< bootstrap 95% interval of the relative discrepancy
  bool sparse = false;        ///< kernel value below 10% of the max over the supplied points
};

struct KdeOptions {
  double bandwidth_scale = 2.0; ///< multiplies Scott's rule per axis (in smoothing coordinates)
  int order = 4;                ///< 2: Gaussian; 4: Gaussian-based fourth-order kernel (3 - u^2)/2 phi(u)
  /// Smooth in (ln r1, ln r2, z / sqrt(r1 r2)) and map back with the exact
  /// Jacobian; keeps the window away from the boundary of the radial cone.
  bool log_transform = true;
  int bootstrap = 200;
  std::uint64_t bootstrap_seed = 7;
  kernel::QuadratureSpec spec{};
};

struct KdeReport {
  double t = 0;
  std::array<double, 3> bandwidth{};
  std::vector<KdePoint> points;
  double max_abs_discrepancy = 0; ///< over non-sparse points
};

/// Product KDE of the radial coordinates against the quadrature kernel pushed
/// through the radial coordinate change (Jacobian 2 pi^2). Throws for points
/// with x = 0 or y = 0 when log_transform is set.
KdeReport kde_compare(const SampleBatch& batch, const std::vector<Point6>& points, const KdeOptions& opt = {});

/// Ten points well inside the bulk of p_1 in radial coordinates.
std::vector<Point6> default_bulk_points();

} // namespace n32::sampler
