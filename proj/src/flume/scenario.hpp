#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace flume::setup {

/// Flat key/value configuration ("section.key" -> value) as read from a
/// scenario file or assembled from CLI overrides.
using ConfigMap = std::map<std::string, std::string>;

struct GaugeSpec {
  std::string id;
  double x_position = 0.0;  ///< [m] from the paddle rest position
  double sampling_dt = 0.02;
};

/// Axis-aligned structure footprint in the x-z plane.
struct StructureBox {
  double x_min = 0.0;
  double x_max = 0.0;
  double z_min = 0.0;
  double z_max = 0.0;
  double width_y = 0.4;  ///< transverse width used to scale 2-D slice loads [m]

  double x_center() const noexcept { return 0.5 * (x_min + x_max); }
};

/// HyTOFU-style flume. Lengths in metres, x measured from the paddle rest
/// face, z from the flat bed.
struct FlumeScenario {
  double flat_bed_length = 14.05;
  double slope_ratio = 0.1;  ///< rise / run
  double slope_run = 7.95;
  double terrace_height = 0.795;
  double terrace_length = 8.0;
  bool has_structure = true;
  double structure_offset_from_slope_end = 0.79;
  double structure_width_x = 0.4;
  double structure_height = 0.5;
  double structure_width_y = 0.4;
  double still_water_depth = 0.75;
  double wave_height = 0.4;
  double ramp = 0.0;  ///< wavemaker generation time; 0 = automatic
  double dp = 0.1;
  double h_over_dp = 2.0;
  int wall_layers = 3;
  double piston_freeboard = 1.5;  ///< paddle height above still water, in units of H
  double cfl = 0.2;
  double alpha_visc = 0.01;
  double delta_diff = 0.1;
  double rho0 = 1000.0;
  double g = 9.81;
  double duration = 12.0;
  double output_dt = 0.02;    ///< gauge/force sampling cadence [s]
  double snapshot_dt = 0.0;   ///< particle CSV cadence [s]; 0 disables
  double gauge_half_width = 2.0;  ///< column half-width in units of dp
  std::vector<GaugeSpec> gauges;

  double slope_end() const noexcept { return flat_bed_length + slope_run; }
  double flume_end() const noexcept { return slope_end() + terrace_length; }
  /// Piecewise-linear bed elevation; clamped outside [0, flume_end].
  double bed_elevation(double x) const noexcept;
  StructureBox structure_box() const noexcept;
  const GaugeSpec* find_gauge(const std::string& id) const noexcept;
};

/// Default WG1..WG10 positions. These are estimates: only a schematic of the
/// experimental gauge layout exists, so none of them are authoritative.
std::vector<GaugeSpec> default_gauges(const FlumeScenario& scn);

/// Defaults overridden by `overrides`, then validated.
/// Throws InvalidGeometry, ResolutionTooCoarse or Config.
FlumeScenario build_scenario(const ConfigMap& overrides = {});

/// Throws InvalidGeometry / ResolutionTooCoarse.
void validate(const FlumeScenario& scn);

ConfigMap to_config_map(const FlumeScenario& scn);

/// INI-style reader: "[section]" headers and "key = value" lines.
ConfigMap read_config_file(const std::filesystem::path& path);
void write_config_file(const std::filesystem::path& path, const ConfigMap& cfg);

/// Scenario without the beach: a flat-bed flume of the given length.
FlumeScenario flat_flume(double length, double depth, double wave_height, double dp);

}  // namespace flume::setup
