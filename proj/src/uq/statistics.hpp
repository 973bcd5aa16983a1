#pragma once

#include <optional>
#include <vector>

namespace flume::uq {

/// Linear interpolation between order statistics: the p-quantile of sorted
/// x[0..n-1] sits at fractional index (n - 1) p.
double quantile_sorted(const std::vector<double>& sorted, double p);

struct BoxplotStats {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double iqr = 0.0;
  double lower_fence = 0.0;  ///< q1 - 1.5 iqr
  double upper_fence = 0.0;  ///< q3 + 1.5 iqr
  double whisker_low = 0.0;  ///< smallest sample inside the fences
  double whisker_high = 0.0; ///< largest sample inside the fences
  double min = 0.0;
  double max = 0.0;
  std::vector<double> outliers;  ///< ascending
};

BoxplotStats boxplot_stats(std::vector<double> samples);

struct ResponseDistribution {
  std::vector<double> samples;
  double bandwidth = 0.0;
  std::vector<double> grid;
  std::vector<double> density;
  BoxplotStats box;

  /// Trapezoid rule over the grid.
  double integral() const;
};

/// 0.9 min(sd, IQR / 1.34) n^(-1/5). Falls back to sd when the IQR is zero,
/// and to 1e-3 max(|mean|, 1) when every sample is identical.
double silverman_bandwidth(const std::vector<double>& samples);

/// Gaussian kernel density with bandwidth h evaluated at x.
double kde_density(const std::vector<double>& samples, double h, double x);

/// Gaussian kernel density estimate on a uniform grid over
/// [min - 4h, max + 4h]. The grid is refined so its spacing never exceeds h/4.
ResponseDistribution kde_estimate(const std::vector<double>& samples, std::optional<double> bandwidth = {},
                                  std::size_t min_grid_points = 512);

}  // namespace flume::uq
