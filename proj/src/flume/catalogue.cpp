#include "flume/catalogue.hpp"

#include "sph/wavemaker.hpp"

namespace flume::setup {

std::vector<WaveCase> scenario_catalogue() {
  return {
      {0.4, 9.22634, 3.35879}, {0.5, 8.60361, 3.50179}, {0.6, 8.16210, 3.63916},
      {0.7, 7.83151, 3.77154}, {0.8, 7.57411, 3.89942}, {0.9, 7.36769, 4.02324},
  };
}

std::vector<WaveCase> theoretical_catalogue(double depth, double g) {
  std::vector<WaveCase> out;
  for (const auto& row : scenario_catalogue()) {
    out.push_back({row.wave_height, sph::RayleighPiston::wavelength(row.wave_height, depth),
                   sph::RayleighPiston::celerity(row.wave_height, depth, g)});
  }
  return out;
}

}  // namespace flume::setup
