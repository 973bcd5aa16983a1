#include "uq/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "core/error.hpp"

namespace flume::uq {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) fail(ErrorCode::TooFewSamples, "quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::Domain, "quantile level outside [0, 1]");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxplotStats boxplot_stats(std::vector<double> samples) {
  if (samples.empty()) fail(ErrorCode::TooFewSamples, "boxplot of an empty sample");
  std::sort(samples.begin(), samples.end());
  BoxplotStats b;
  b.q1 = quantile_sorted(samples, 0.25);
  b.median = quantile_sorted(samples, 0.5);
  b.q3 = quantile_sorted(samples, 0.75);
  b.iqr = b.q3 - b.q1;
  b.lower_fence = b.q1 - 1.5 * b.iqr;
  b.upper_fence = b.q3 + 1.5 * b.iqr;
  b.min = samples.front();
  b.max = samples.back();
  b.whisker_low = b.max;
  b.whisker_high = b.min;
  for (double x : samples) {
    if (x < b.lower_fence || x > b.upper_fence) {
      b.outliers.push_back(x);
    } else {
      b.whisker_low = std::min(b.whisker_low, x);
      b.whisker_high = std::max(b.whisker_high, x);
    }
  }
  return b;
}

double ResponseDistribution::integral() const {
  double s = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) s += 0.5 * (density[i] + density[i - 1]) * (grid[i] - grid[i - 1]);
  return s;
}

double silverman_bandwidth(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 2) fail(ErrorCode::TooFewSamples, "automatic bandwidth needs at least 2 samples");
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  if (!(spread > 0.0)) return 1e-3 * std::max(std::abs(mean), 1.0);
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

double kde_density(const std::vector<double>& samples, double h, double x) {
  const double norm = 1.0 / (static_cast<double>(samples.size()) * h * std::sqrt(2.0 * std::numbers::pi));
  const double cutoff = 9.0 * h;  // exp(-40.5) is negligible
  double s = 0.0;
  for (double xi : samples) {
    const double d = x - xi;
    if (std::abs(d) > cutoff) continue;
    const double z = d / h;
    s += std::exp(-0.5 * z * z);
  }
  return s * norm;
}

ResponseDistribution kde_estimate(const std::vector<double>& samples, std::optional<double> bandwidth,
                                  std::size_t min_grid_points) {
  if (samples.empty()) fail(ErrorCode::TooFewSamples, "density estimate of an empty sample");
  for (double x : samples) {
    if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "non-finite sample");
  }
  ResponseDistribution r;
  r.samples = samples;
  if (bandwidth) {
    if (!(*bandwidth > 0.0)) fail(ErrorCode::InvalidArgument, "bandwidth must be positive");
    r.bandwidth = *bandwidth;
  } else {
    r.bandwidth = silverman_bandwidth(samples);
  }
  const double h = r.bandwidth;
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *mn - 4.0 * h;
  const double hi = *mx + 4.0 * h;
  const double needed = std::ceil((hi - lo) / (0.25 * h)) + 1.0;
  const auto points = static_cast<std::size_t>(std::clamp(needed, static_cast<double>(std::max<std::size_t>(min_grid_points, 2)), 2e6));
  r.grid.resize(points);
  r.density.assign(points, 0.0);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    r.grid[i] = lo + step * static_cast<double>(i);
    r.density[i] = kde_density(samples, h, r.grid[i]);
  }
  r.box = boxplot_stats(samples);
  return r;
}

}  // namespace flume::uq
