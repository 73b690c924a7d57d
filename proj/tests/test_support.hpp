#pragma once

// Seeded generators and brute-force reference computations shared by the test
// binaries. Nothing here calls the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "relaxlab/integrand.hpp"
#include "relaxlab/pcfn.hpp"
#include "relaxlab/random.hpp"

namespace relaxlab::testing {

/// Random piecewise-constant function with 1..max_intervals intervals and
/// values spread over a range of at most max_range, offset by a random level.
inline PiecewiseConstantFn random_function(Rng& rng, int max_intervals, double max_range,
                                           double offset_scale = 3.0) {
  const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_intervals)));
  std::vector<double> cuts;
  while (static_cast<int>(cuts.size()) < k - 1) {
    const double c = rng.uniform(0.01, 0.99);
    if (std::none_of(cuts.begin(), cuts.end(), [&](double x) { return std::abs(x - c) < 1e-3; }))
      cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  Eigen::VectorXd bp(k + 1);
  bp[0] = 0.0;
  for (int i = 0; i < k - 1; ++i) bp[i + 1] = cuts[static_cast<std::size_t>(i)];
  bp[k] = 1.0;
  const double range = rng.uniform(0.0, max_range);
  const double base = rng.uniform(-offset_scale, offset_scale);
  Eigen::VectorXd vals(k);
  for (int i = 0; i < k; ++i) vals[i] = base + range * rng.uniform();
  return {bp, vals};
}

/// Random function whose breakpoints lie on multiples of 1/windows.
inline PiecewiseConstantFn random_window_aligned(Rng& rng, int windows, int max_intervals, double max_range) {
  std::vector<int> edges;
  for (int e = 1; e < windows; ++e) edges.push_back(e);
  for (int i = static_cast<int>(edges.size()) - 1; i > 0; --i)
    std::swap(edges[static_cast<std::size_t>(i)], edges[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(max_intervals, windows))));
  std::vector<int> chosen(edges.begin(), edges.begin() + (k - 1));
  std::sort(chosen.begin(), chosen.end());
  Eigen::VectorXd bp(k + 1);
  bp[0] = 0.0;
  for (int i = 0; i < k - 1; ++i) bp[i + 1] = static_cast<double>(chosen[static_cast<std::size_t>(i)]) / windows;
  bp[k] = 1.0;
  const double range = rng.uniform(0.0, max_range);
  const double base = rng.uniform(-2.0, 2.0);
  Eigen::VectorXd vals(k);
  for (int i = 0; i < k; ++i) vals[i] = base + range * rng.uniform();
  return {bp, vals};
}

/// Random two-valued function {z, z+1} with random interleaving.
inline PiecewiseConstantFn random_two_valued(Rng& rng, int max_intervals) {
  auto u = random_function(rng, std::max(2, max_intervals), 0.0);
  Eigen::VectorXd vals = u.values();
  const double z = rng.uniform(-2.0, 2.0);
  for (Eigen::Index i = 0; i < vals.size(); ++i) vals[i] = z + static_cast<double>(i % 2);
  return {u.breakpoints(), vals};
}

/// Minimum over a fine z-grid of (m - z)^2 + (m - z - 1)^2 on [sup - 1, inf],
/// plus the interval end points. Reference for the projection formulas.
inline double brute_force_relaxed(const PiecewiseConstantFn& u, int grid = 200000) {
  const double inf = u.values().minCoeff();
  const double sup = u.values().maxCoeff();
  double mean = 0.0;
  for (Eigen::Index i = 0; i < u.intervals(); ++i)
    mean += u.values()[i] * (u.breakpoints()[i + 1] - u.breakpoints()[i]);
  const double lo = sup - 1.0;
  const double hi = inf;
  if (lo > hi + 1e-12) return std::numeric_limits<double>::infinity();
  const auto q = [&](double z) { return (mean - z) * (mean - z) + (mean - z - 1) * (mean - z - 1); };
  double best = std::min(q(lo), q(hi));
  for (int i = 0; i <= grid; ++i) best = std::min(best, q(lo + (hi - lo) * i / grid));
  return best;
}

/// Midpoint quadrature of f(u(x) - u(y)) on an N x N grid. Exact when every
/// breakpoint of u is a multiple of 1/N.
inline double quadrature_F(const PiecewiseConstantFn& u, const Integrand& f, int N) {
  std::vector<double> samples(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) samples[static_cast<std::size_t>(i)] = u((i + 0.5) / N);
  double acc = 0.0;
  for (double a : samples)
    for (double b : samples) {
      const auto v = eval(f, a - b);
      if (v.is_infinite()) return std::numeric_limits<double>::infinity();
      acc += v.value();
    }
  return acc / (static_cast<double>(N) * N);
}

/// Brute-force lower convex envelope on a grid: the minimum over all chords
/// of finite points that span z (single points included).
inline std::vector<double> brute_force_envelope(const std::vector<double>& zs, const std::vector<ExtendedReal>& vals) {
  std::vector<double> out(zs.size(), std::numeric_limits<double>::infinity());
  for (std::size_t q = 0; q < zs.size(); ++q) {
    for (std::size_t a = 0; a < zs.size(); ++a) {
      if (vals[a].is_infinite() || zs[a] > zs[q]) continue;
      for (std::size_t b = a; b < zs.size(); ++b) {
        if (vals[b].is_infinite() || zs[b] < zs[q]) continue;
        double v;
        if (b == a) {
          v = vals[a].value();
        } else {
          const double s = (zs[q] - zs[a]) / (zs[b] - zs[a]);
          v = vals[a].value() + s * (vals[b].value() - vals[a].value());
        }
        out[q] = std::min(out[q], v);
      }
    }
  }
  return out;
}

}  // namespace relaxlab::testing
