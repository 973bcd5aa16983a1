#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sph/particle.hpp"

namespace flume::setup {

/// Characteristic scales used for normalised traces.
inline constexpr double kEta0 = 0.4;    ///< [m]
inline constexpr double kT0 = 2.747;    ///< [s]

/// Free-surface elevation above still water at x: the top of the highest
/// fluid particle in the column |x_p - x| <= half_width, minus the still-water
/// depth. A dry column returns -still_water_depth.
double sample_gauge(const sph::SimState& state, double x, double half_width, double dp,
                    double still_water_depth);

struct GaugeTrace {
  std::string id;
  double x_position = 0.0;
  double still_water_depth = 0.75;
  std::vector<double> times;
  std::vector<double> eta;

  bool is_dry(std::size_t i) const noexcept { return eta[i] <= -still_water_depth; }
  double peak() const noexcept;
  /// Time of the peak elevation; NaN for an empty trace.
  double peak_time() const noexcept;
};

/// Columns t,t_T0,eta,eta_eta0,dry.
void write_trace_csv(const std::filesystem::path& path, const GaugeTrace& trace, double eta0 = kEta0,
                     double t0 = kT0);
GaugeTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace flume::setup
