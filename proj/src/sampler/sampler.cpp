#include "n32/sampler.hpp"
#include "n32/parallel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace n32::sampler {

std::size_t step_count(const SimConfig& cfg)
{
  if (!(cfg.t > 0) || !(cfg.dt > 0) || !std::isfinite(cfg.t) || !std::isfinite(cfg.dt))
    throw std::invalid_argument("simulation needs positive finite t and dt");
  if (cfg.n_paths == 0)
    throw std::invalid_argument("simulation needs at least one path");
  const double n = std::round(cfg.t / cfg.dt);
  if (n > 1e9)
    throw std::invalid_argument("too many steps");
  return static_cast<std::size_t>(std::max(1.0, n));
}

Point6 step(const Point6& s, const std::array<double, 3>& dB)
{
  Point6 out = s;
  for (std::size_t i = 0; i < 3; ++i) {
    out.x[i] += dB[i];
    out.y[i] += 0.5 * (s.x[next(i)] * dB[after(i)] - s.x[after(i)] * dB[next(i)]);
  }
  return out;
}

SampleBatch simulate(const SimConfig& cfg, unsigned threads)
{
  SampleBatch b;
  b.config = cfg;
  b.steps = step_count(cfg);
  b.dt_used = cfg.t / static_cast<double>(b.steps);
  b.dt_adjusted = std::abs(b.dt_used - cfg.dt) > 1e-12 * cfg.dt;
  b.samples.resize(cfg.n_paths);
  const double sd = std::sqrt(2.0 * b.dt_used);
  const std::size_t blocks = (cfg.n_paths + kBlockSize - 1) / kBlockSize;
  parallel_for(
      blocks,
      [&](std::size_t blk) {
        std::seed_seq ss{cfg.seed, static_cast<std::uint64_t>(blk)};
        std::mt19937_64 rng(ss);
        std::normal_distribution<double> n01;
        const std::size_t hi = std::min(cfg.n_paths, (blk + 1) * kBlockSize);
        for (std::size_t p = blk * kBlockSize; p < hi; ++p) {
          Point6 g{};
          for (std::size_t k = 0; k < b.steps; ++k)
            g = step(g, {sd * n01(rng), sd * n01(rng), sd * n01(rng)});
          b.samples[p] = g;
        }
      },
      threads);
  b.moments = moments(b.samples);
  return b;
}

namespace {

Stat stat_of(const std::vector<Point6>& s, double (*f)(const Point6&))
{
  const double n = static_cast<double>(s.size());
  double m = 0;
  for (const auto& g : s)
    m += f(g);
  m /= n;
  double v = 0;
  for (const auto& g : s) {
    const double d = f(g) - m;
    v += d * d;
  }
  v /= std::max(1.0, n - 1);
  return {m, std::sqrt(v / n)};
}

double r1_of(const Point6& g) { return dot(g.x, g.x); }
double r2_of(const Point6& g) { return dot(g.y, g.y); }
double z_of(const Point6& g) { return dot(g.x, g.y); }

} // namespace

Moments moments(const std::vector<Point6>& s)
{
  if (s.empty())
    throw std::invalid_argument("moments of an empty batch");
  Moments m;
  m.n = s.size();
  m.r1 = stat_of(s, r1_of);
  m.r2 = stat_of(s, r2_of);
  m.z = stat_of(s, z_of);
  m.r1sq = stat_of(s, [](const Point6& g) { return r1_of(g) * r1_of(g); });
  m.r2sq = stat_of(s, [](const Point6& g) { return r2_of(g) * r2_of(g); });
  m.zsq = stat_of(s, [](const Point6& g) { return z_of(g) * z_of(g); });
  m.coord[0] = stat_of(s, [](const Point6& g) { return g.x[0]; });
  m.coord[1] = stat_of(s, [](const Point6& g) { return g.x[1]; });
  m.coord[2] = stat_of(s, [](const Point6& g) { return g.x[2]; });
  m.coord[3] = stat_of(s, [](const Point6& g) { return g.y[0]; });
  m.coord[4] = stat_of(s, [](const Point6& g) { return g.y[1]; });
  m.coord[5] = stat_of(s, [](const Point6& g) { return g.y[2]; });
  return m;
}

DilationReport dilation_distribution_check(const SimConfig& cfg, double lambda, unsigned threads)
{
  if (!(lambda > 0) || !std::isfinite(lambda))
    throw std::invalid_argument("dilation factor must be positive");
  DilationReport rep;
  rep.lambda = lambda;
  rep.base = cfg;
  rep.fresh = cfg;
  rep.fresh.t = lambda * lambda * cfg.t;
  auto a = simulate(cfg, threads);
  for (auto& g : a.samples)
    g = dilate(lambda, g);
  const auto b = simulate(rep.fresh, threads);
  rep.identical = a.samples == b.samples;
  rep.pushed = moments(a.samples);
  rep.fresh_moments = b.moments;
  auto cmp = [&](const char* name, Stat x, Stat y) {
    const double se = std::hypot(x.stderr_, y.stderr_);
    const double zs = se > 0 ? (x.mean - y.mean) / se : (x.mean == y.mean ? 0.0 : INFINITY);
    rep.comparisons.push_back({name, x, y, zs});
  };
  const auto& p = rep.pushed;
  const auto& f = rep.fresh_moments;
  cmp("r1", p.r1, f.r1);
  cmp("r2", p.r2, f.r2);
  cmp("z", p.z, f.z);
  cmp("r1^2", p.r1sq, f.r1sq);
  cmp("r2^2", p.r2sq, f.r2sq);
  cmp("z^2", p.zsq, f.zsq);
  rep.passed = true;
  for (const auto& c : rep.comparisons)
    rep.passed = rep.passed && std::abs(c.zscore) <= 3.0;
  return rep;
}

} // namespace n32::sampler
