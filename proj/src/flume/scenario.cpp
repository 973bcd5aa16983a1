#include "flume/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace flume::setup {
namespace {

double to_double(const std::string& key, const std::string& value) {
  try {
    return csv::parse_double(value);
  } catch (const Error&) {
    fail(ErrorCode::Config, "key '" + key + "': expected a number, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  fail(ErrorCode::Config, "key '" + key + "': expected a boolean, got '" + value + "'");
}

struct Field {
  const char* key;
  double FlumeScenario::*member;
};

constexpr Field kFields[] = {
    {"flume.flat_bed_length", &FlumeScenario::flat_bed_length},
    {"flume.slope_ratio", &FlumeScenario::slope_ratio},
    {"flume.slope_run", &FlumeScenario::slope_run},
    {"flume.terrace_height", &FlumeScenario::terrace_height},
    {"flume.terrace_length", &FlumeScenario::terrace_length},
    {"flume.still_water_depth", &FlumeScenario::still_water_depth},
    {"flume.piston_freeboard", &FlumeScenario::piston_freeboard},
    {"structure.offset_from_slope_end", &FlumeScenario::structure_offset_from_slope_end},
    {"structure.width_x", &FlumeScenario::structure_width_x},
    {"structure.height", &FlumeScenario::structure_height},
    {"structure.width_y", &FlumeScenario::structure_width_y},
    {"wave.height", &FlumeScenario::wave_height},
    {"wave.ramp", &FlumeScenario::ramp},
    {"numerics.dp", &FlumeScenario::dp},
    {"numerics.h_over_dp", &FlumeScenario::h_over_dp},
    {"numerics.cfl", &FlumeScenario::cfl},
    {"numerics.alpha_visc", &FlumeScenario::alpha_visc},
    {"numerics.delta_diff", &FlumeScenario::delta_diff},
    {"numerics.rho0", &FlumeScenario::rho0},
    {"numerics.g", &FlumeScenario::g},
    {"run.duration", &FlumeScenario::duration},
    {"run.output_dt", &FlumeScenario::output_dt},
    {"run.snapshot_dt", &FlumeScenario::snapshot_dt},
    {"gauges.half_width", &FlumeScenario::gauge_half_width},
};

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

double FlumeScenario::bed_elevation(double x) const noexcept {
  if (x <= flat_bed_length) return 0.0;
  if (x <= slope_end()) return slope_ratio * (x - flat_bed_length);
  return terrace_height;
}

StructureBox FlumeScenario::structure_box() const noexcept {
  StructureBox box;
  box.x_min = slope_end() + structure_offset_from_slope_end;
  box.x_max = box.x_min + structure_width_x;
  box.z_min = bed_elevation(box.x_min);
  box.z_max = box.z_min + structure_height;
  box.width_y = structure_width_y;
  return box;
}

const GaugeSpec* FlumeScenario::find_gauge(const std::string& id) const noexcept {
  for (const auto& g : gauges) {
    if (g.id == id) return &g;
  }
  return nullptr;
}

std::vector<GaugeSpec> default_gauges(const FlumeScenario& scn) {
  const double flat = scn.flat_bed_length;
  const double end = scn.flume_end();
  std::vector<GaugeSpec> g;
  auto add = [&](const char* id, double x) {
    g.push_back(GaugeSpec{id, std::clamp(x, 0.5, end - 0.1), scn.output_dt});
  };
  add("WG1", 0.35 * flat);
  add("WG2", 0.6 * flat);
  add("WG3", 0.85 * flat);
  if (scn.slope_run > 0.0) {
    add("WG4", flat + 0.25 * scn.slope_run);
    add("WG5", flat + 0.75 * scn.slope_run);
  }
  if (scn.has_structure && scn.terrace_length > 0.0) {
    const StructureBox box = scn.structure_box();
    add("WG6", scn.slope_end() + 0.25 * scn.structure_offset_from_slope_end);
    add("WG7", box.x_max + 0.4);
    add("WG8", box.x_min - 0.25);
    add("WG9", box.x_max + 1.5);
    add("WG10", box.x_max + 3.0);
  }
  return g;
}

void validate(const FlumeScenario& s) {
  auto geometry = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::InvalidGeometry, what);
  };
  geometry(positive(s.flat_bed_length), "flat_bed_length must be > 0");
  geometry(non_negative(s.slope_ratio), "slope_ratio must be >= 0");
  geometry(non_negative(s.slope_run), "slope_run must be >= 0");
  geometry(non_negative(s.terrace_height), "terrace_height must be >= 0");
  geometry(non_negative(s.terrace_length), "terrace_length must be >= 0");
  geometry(std::abs(s.slope_ratio * s.slope_run - s.terrace_height) < 1e-6,
           "terrace_height must equal slope_ratio * slope_run");
  geometry(non_negative(s.still_water_depth), "still_water_depth must be >= 0");
  geometry(positive(s.dp), "dp must be > 0");
  geometry(positive(s.wave_height), "wave height must be > 0");
  geometry(positive(s.h_over_dp), "h_over_dp must be > 0");
  geometry(s.wall_layers >= 2, "at least two wall layers are required");
  geometry(positive(s.duration), "duration must be > 0");
  geometry(positive(s.output_dt), "output_dt must be > 0");
  geometry(non_negative(s.snapshot_dt), "snapshot_dt must be >= 0");
  geometry(positive(s.cfl) && s.cfl <= 1.0, "cfl must lie in (0, 1]");
  geometry(positive(s.rho0) && positive(s.g), "rho0 and g must be > 0");
  geometry(non_negative(s.alpha_visc) && non_negative(s.delta_diff), "dissipation coefficients must be >= 0");
  geometry(positive(s.gauge_half_width), "gauge half width must be > 0");
  if (s.has_structure) {
    geometry(positive(s.structure_width_x) && positive(s.structure_height) && positive(s.structure_width_y),
             "structure dimensions must be > 0");
    geometry(non_negative(s.structure_offset_from_slope_end), "structure offset must be >= 0");
    geometry(s.structure_offset_from_slope_end + s.structure_width_x <= s.terrace_length + 1e-9,
             "structure must sit on the terrace");
  }
  for (const auto& g : s.gauges) {
    geometry(g.x_position > 0.0 && g.x_position < s.flume_end(), "gauge " + g.id + " lies outside the flume");
    geometry(g.sampling_dt >= s.output_dt - 1e-12, "gauge " + g.id + " samples faster than the output cadence");
  }
  // at least four particles across the wave height
  if (s.wave_height / s.dp < 4.0 - 1e-9) {
    fail(ErrorCode::ResolutionTooCoarse,
         "H/dp = " + std::to_string(s.wave_height / s.dp) + " < 4; refine dp or raise the wave height");
  }
}

FlumeScenario build_scenario(const ConfigMap& overrides) {
  FlumeScenario s;
  bool custom_gauges = false;
  std::vector<GaugeSpec> gauges;
  for (const auto& [key, value] : overrides) {
    bool handled = false;
    for (const auto& f : kFields) {
      if (key == f.key) {
        s.*(f.member) = to_double(key, value);
        handled = true;
        break;
      }
    }
    if (handled) continue;
    if (key == "flume.wall_layers") {
      const double v = to_double(key, value);
      if (v != std::floor(v)) fail(ErrorCode::Config, "flume.wall_layers must be an integer");
      s.wall_layers = static_cast<int>(v);
    } else if (key == "structure.enabled") {
      s.has_structure = to_bool(key, value);
    } else if (key.rfind("gauges.WG", 0) == 0 || key.rfind("gauge.", 0) == 0) {
      custom_gauges = true;
      const std::string id = key.substr(key.find('.') + 1);
      gauges.push_back(GaugeSpec{id, to_double(key, value), 0.0});
    } else {
      fail(ErrorCode::Config, "unknown scenario key '" + key + "'");
    }
  }
  if (custom_gauges) {
    s.gauges = std::move(gauges);
  } else {
    s.gauges = default_gauges(s);
  }
  for (auto& g : s.gauges) {
    if (g.sampling_dt <= 0.0) g.sampling_dt = s.output_dt;
  }
  validate(s);
  return s;
}

ConfigMap to_config_map(const FlumeScenario& s) {
  ConfigMap m;
  for (const auto& f : kFields) {
    m[f.key] = csv::num(s.*(f.member));
  }
  m["flume.wall_layers"] = std::to_string(s.wall_layers);
  m["structure.enabled"] = s.has_structure ? "true" : "false";
  for (const auto& g : s.gauges) {
    m["gauges." + g.id] = csv::num(g.x_position);
  }
  return m;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::MissingInput, "cannot open config file " + path.string());
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(ErrorCode::Config, path.string() + ": " + e.what());
  }
  ConfigMap out;
  for (const auto& [section, children] : tree) {
    if (children.empty()) {
      out[section] = children.data();
      continue;
    }
    for (const auto& [key, leaf] : children) {
      out[section + "." + key] = leaf.data();
    }
  }
  return out;
}

void write_config_file(const std::filesystem::path& path, const ConfigMap& cfg) {
  using Path = boost::property_tree::ptree::path_type;
  boost::property_tree::ptree tree;
  for (const auto& [key, value] : cfg) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) {
      tree.put(Path(key, '\0'), value);
      continue;
    }
    const std::string section = key.substr(0, dot);
    auto child = tree.get_child_optional(Path(section, '\0'));
    auto& node = child ? *child : tree.add_child(Path(section, '\0'), {});
    node.put(Path(key.substr(dot + 1), '\0'), value);
  }
  std::ofstream os(path);
  if (!os) fail(ErrorCode::Io, "cannot write config file " + path.string());
  boost::property_tree::write_ini(os, tree);
}

FlumeScenario flat_flume(double length, double depth, double wave_height, double dp) {
  ConfigMap m{
      {"flume.flat_bed_length", csv::num(length)},
      {"flume.slope_run", "0"},
      {"flume.slope_ratio", "0"},
      {"flume.terrace_height", "0"},
      {"flume.terrace_length", "0"},
      {"flume.still_water_depth", csv::num(depth)},
      {"structure.enabled", "false"},
      {"wave.height", csv::num(wave_height)},
      {"numerics.dp", csv::num(dp)},
  };
  return build_scenario(m);
}

}  // namespace flume::setup
