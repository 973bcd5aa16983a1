#pragma once

#include <vector>

namespace flume::setup {

struct WaveCase {
  double wave_height;  ///< [m]
  double wavelength;   ///< [m]
  double celerity;     ///< [m/s]
};

/// Published wave-paddle configurations for H = 0.4 ... 0.9 m at 0.75 m depth.
std::vector<WaveCase> scenario_catalogue();

/// Same rows recomputed from Rayleigh theory (wavelength 2 pi / k, c = sqrt(g (H + d))).
std::vector<WaveCase> theoretical_catalogue(double depth = 0.75, double g = 9.81);

}  // namespace flume::setup
