#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flume/scenario.hpp"
#include "forces/forces.hpp"
#include "uq/propagate.hpp"

namespace flume::pipeline {

namespace fs = std::filesystem;

/// Progress sink for long stages; receives a single line of text.
using Progress = std::function<void(const std::string&)>;

/// Scenario from an optional INI file plus "section.key" overrides.
setup::FlumeScenario load_scenario(const std::optional<fs::path>& file, const setup::ConfigMap& overrides);

/// Hash of the resolved scenario; identical physics gives identical hashes.
std::string config_hash(const setup::FlumeScenario& scn);

/// Library sub-directory name for a scenario: H<height>_dp<dp>_<hash prefix>.
std::string run_key(const setup::FlumeScenario& scn);

struct SimulateOptions {
  /// Run directory. Ignored when library is set.
  fs::path out_dir;
  /// When set, the run goes to library/run_key(scn) and is skipped if a
  /// verified run with the same config hash already exists there.
  std::optional<fs::path> library;
  Progress progress;
};

struct SimulateResult {
  fs::path run_dir;
  bool cached = false;
  std::size_t particles = 0;
  std::size_t fluid_particles = 0;
  std::int64_t steps = 0;
  double seconds = 0.0;
  double peak_sph_force = 0.0;
};

/// Run directory layout:
///   scenario.ini, gauges/<id>.csv, forces/sph.csv, structure_flow.csv,
///   snapshots/snap_<n>.csv (optional), manifest.json
SimulateResult run_simulate(const setup::FlumeScenario& scn, const SimulateOptions& opts);

struct StructureFlow {
  std::vector<double> times;
  std::vector<double> veff;
  std::vector<double> hb;  ///< absolute water level at the near-structure gauge
};

StructureFlow read_structure_flow(const fs::path& run_dir);

struct ForcesOptions {
  std::vector<fs::path> run_dirs;
  fs::path out_dir;
  bool sph = true;
  bool asce = true;
  bool semi_empirical = true;
  double cp = 3.5;
  /// Constant-envelope ASCE load for this ds instead of the inundation history.
  std::optional<double> asce_ds;
  forces::SemiEmpiricalParams semi;
  double f0 = forces::kF0;
};

struct ForcesSummaryRow {
  std::string run;
  double wave_height = 0.0;
  double peak_sph = 0.0;
  double peak_asce = 0.0;
  double peak_semi = 0.0;
  double max_veff = 0.0;
  double max_froude = 0.0;
};

/// Per run: <out>/<run>/{sph,asce,semi_empirical,comparison}.csv; overall:
/// forces_summary.csv and froude.csv. Returns the summary rows sorted by
/// wave height.
std::vector<ForcesSummaryRow> run_forces(const ForcesOptions& opts);

struct UqOptions {
  std::optional<fs::path> spec_file;
  fs::path library;
  fs::path out_dir;
  std::size_t q = 600;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool distribution_study = false;
  /// Restrict to these wave heights (empty = every run in the library).
  std::vector<double> heights;
  std::optional<double> bandwidth;
  uq::PropagationConfig propagation;
  Progress progress;
};

struct UqResult {
  std::size_t rows = 0;
  std::size_t failures = 0;
  bool partial_failure = false;
  std::vector<double> wave_heights;
};

/// Loads every run under `library` (filtered by heights), one per height.
uq::LoadLibrary load_library(const fs::path& library, const std::vector<double>& heights);

/// Writes samples.csv, edp.csv, kde.csv, boxplot.csv, summary.csv (and
/// edp_<distribution>.csv per study case) plus manifest.json.
UqResult run_uq(const UqOptions& opts);

/// Normalised, plot-ready tables from a run directory produced by any stage.
/// Throws MissingInput without a manifest. Returns the files written.
std::vector<std::string> run_report(const fs::path& run_dir, const fs::path& out_dir);

}  // namespace flume::pipeline
