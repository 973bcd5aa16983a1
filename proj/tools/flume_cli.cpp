// Command-line driver: simulate | forces | uq | report.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flume/flume.h"

namespace fs = std::filesystem;

namespace {

struct StageError {
  flume_status status;
};

std::string g_stage = "flume";
bool g_quiet = false;

void check(flume_status st) {
  if (st != FLUME_OK) throw StageError{st};
}

int report_failure(flume_status st) {
  std::cerr << "flume " << g_stage << ": error [" << flume_status_name(st) << "]: " << flume_last_error() << '\n';
  return flume_exit_code(st);
}

void progress(const char* msg, void*) {
  if (!g_quiet) std::cerr << "[" << g_stage << "] " << msg << '\n';
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

/// Run directories are library sub-directories that carry a manifest.
std::vector<std::string> runs_in(const fs::path& library) {
  std::vector<std::string> out;
  if (!fs::is_directory(library)) return out;
  for (const auto& e : fs::directory_iterator(library)) {
    if (e.is_directory() && fs::exists(e.path() / "manifest.json") && fs::exists(e.path() / "scenario.ini")) {
      out.push_back(e.path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct SimulateArgs {
  std::string config;
  std::vector<std::string> sets;
  double wave_height = 0.0;
  double dp = 0.0;
  double duration = 0.0;
  double snapshots = -1.0;
  std::string out = "run";
  std::string library;
};

int cmd_simulate(const SimulateArgs& a) {
  flume_scenario* scn = nullptr;
  check(a.config.empty() ? flume_scenario_create(&scn) : flume_scenario_load(a.config.c_str(), &scn));
  std::vector<std::string> keys;
  std::vector<std::string> values;
  for (const auto& s : a.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      flume_scenario_destroy(scn);
      std::cerr << "flume simulate: error [config]: --set expects key=value, got '" << s << "'\n";
      return 2;
    }
    keys.push_back(s.substr(0, eq));
    values.push_back(s.substr(eq + 1));
  }
  if (a.wave_height > 0.0) keys.push_back("wave.height"), values.push_back(fmt(a.wave_height));
  if (a.dp > 0.0) keys.push_back("numerics.dp"), values.push_back(fmt(a.dp));
  if (a.duration > 0.0) keys.push_back("run.duration"), values.push_back(fmt(a.duration));
  if (a.snapshots >= 0.0) keys.push_back("run.snapshot_dt"), values.push_back(fmt(a.snapshots));
  std::vector<const char*> kp;
  std::vector<const char*> vp;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    kp.push_back(keys[i].c_str());
    vp.push_back(values[i].c_str());
  }
  flume_status st = flume_scenario_set_many(scn, kp.data(), vp.data(), kp.size());
  if (st != FLUME_OK) {
    flume_scenario_destroy(scn);
    throw StageError{st};
  }
  flume_simulate_options opts{};
  opts.out_dir = a.out.c_str();
  opts.library_dir = a.library.empty() ? nullptr : a.library.c_str();
  opts.progress = progress;
  flume_simulate_result r{};
  st = flume_run_simulate(scn, &opts, &r);
  flume_scenario_destroy(scn);
  check(st);
  std::printf("run_dir=%s\ncached=%d\nparticles=%zu\nfluid_particles=%zu\nsteps=%lld\nseconds=%.2f\npeak_sph_force=%.6g\n",
              r.run_dir, r.cached, r.particles, r.fluid_particles, static_cast<long long>(r.steps), r.seconds,
              r.peak_sph_force);
  return 0;
}

struct ForcesArgs {
  std::vector<std::string> runs;
  std::string library;
  std::string out = "forces";
  std::vector<std::string> estimators{"sph", "asce", "semi_empirical"};
  double asce_ds = -1.0;
  double cp = 3.5;
  double cd = 0.0;
  double area = 0.0;
  double width = 0.0;
};

int cmd_forces(const ForcesArgs& a) {
  std::vector<std::string> runs = a.runs;
  if (!a.library.empty()) {
    const auto more = runs_in(a.library);
    runs.insert(runs.end(), more.begin(), more.end());
  }
  flume_forces_options o;
  flume_forces_options_init(&o);
  o.sph = o.asce = o.semi_empirical = 0;
  for (const auto& e : a.estimators) {
    if (e == "sph") {
      o.sph = 1;
    } else if (e == "asce") {
      o.asce = 1;
    } else if (e == "semi_empirical" || e == "semi") {
      o.semi_empirical = 1;
    } else {
      std::cerr << "flume forces: error [config]: unknown estimator '" << e << "'\n";
      return 2;
    }
  }
  std::vector<const char*> dirs;
  for (const auto& r : runs) dirs.push_back(r.c_str());
  o.run_dirs = dirs.data();
  o.n_run_dirs = dirs.size();
  o.out_dir = a.out.c_str();
  o.cp = a.cp;
  if (a.asce_ds >= 0.0) {
    o.use_asce_ds = 1;
    o.asce_ds = a.asce_ds;
  }
  if (a.cd > 0.0) o.cd = a.cd;
  if (a.area > 0.0) o.area = a.area;
  if (a.width > 0.0) o.width = a.width;
  std::size_t n = 0;
  check(flume_run_forces(&o, nullptr, 0, &n));
  std::vector<flume_forces_summary> rows(n);
  if (n > 0) check(flume_run_forces(&o, rows.data(), rows.size(), &n));
  std::printf("wave_height,peak_sph,peak_asce,peak_semi_empirical,max_veff,max_froude\n");
  for (const auto& r : rows) {
    std::printf("%.2f,%.6g,%.6g,%.6g,%.6g,%.6g\n", r.wave_height, r.peak_sph, r.peak_asce, r.peak_semi_empirical,
                r.max_veff, r.max_froude);
  }
  return 0;
}

struct UqArgs {
  std::string spec;
  std::string library;
  std::string out = "uq";
  std::size_t q = 600;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool study = false;
  std::vector<double> heights;
  double bandwidth = 0.0;
  double failure_threshold = 0.01;
};

int cmd_uq(const UqArgs& a) {
  flume_uq_options o;
  flume_uq_options_init(&o);
  o.spec_file = a.spec.empty() ? nullptr : a.spec.c_str();
  o.library_dir = a.library.c_str();
  o.out_dir = a.out.c_str();
  o.q = a.q;
  o.seed = a.seed;
  o.jobs = a.jobs;
  o.distribution_study = a.study ? 1 : 0;
  o.heights = a.heights.empty() ? nullptr : a.heights.data();
  o.n_heights = a.heights.size();
  if (a.bandwidth > 0.0) {
    o.use_bandwidth = 1;
    o.bandwidth = a.bandwidth;
  }
  o.failure_threshold = a.failure_threshold;
  o.progress = progress;
  flume_uq_result r{};
  const flume_status st = flume_run_uq(&o, &r);
  if (st != FLUME_OK && st != FLUME_ERR_PARTIAL_FAILURE) throw StageError{st};
  std::printf("rows=%zu\nfailures=%zu\nheights=%zu\n", r.rows, r.failures, r.n_heights);
  const fs::path summary = fs::path(a.out) / "summary.csv";
  if (!g_quiet && fs::exists(summary)) {
    std::ifstream is(summary);
    std::cout << is.rdbuf();
  }
  if (st == FLUME_ERR_PARTIAL_FAILURE) return report_failure(st);
  return 0;
}

int cmd_report(const std::string& run, const std::string& out) {
  std::size_t n = 0;
  check(flume_run_report(run.c_str(), out.c_str(), &n));
  std::printf("files=%zu\n", n);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-D SPH wave flume, wave-load estimators and structural uncertainty sweeps"};
  app.set_version_flag("--version", std::string(flume_version()));
  app.require_subcommand(1);
  app.add_flag("--quiet", g_quiet, "Suppress progress output");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Run the SPH flume and record gauges and structure loads");
  s->add_option("config", sim.config, "Scenario INI file")->check(CLI::ExistingFile);
  s->add_option("--set", sim.sets, "Override a scenario key (section.key=value)");
  s->add_option("--wave-height", sim.wave_height, "Solitary wave height H [m]");
  s->add_option("--dp", sim.dp, "Particle spacing [m]");
  s->add_option("--duration", sim.duration, "Simulated time [s]");
  s->add_option("--snapshots", sim.snapshots, "Particle snapshot interval [s] (0 disables)");
  s->add_option("-o,--out", sim.out, "Run directory");
  s->add_option("--library", sim.library, "Cache root; the run goes to <library>/<key>");

  ForcesArgs fa;
  auto* f = app.add_subcommand("forces", "Evaluate SPH, ASCE and semi-empirical loads for simulated runs");
  f->add_option("--run", fa.runs, "Run directory (repeatable)");
  f->add_option("--library", fa.library, "Use every run under this directory");
  f->add_option("-o,--out", fa.out, "Output directory");
  f->add_option("--estimators", fa.estimators, "Subset of sph,asce,semi_empirical")->delimiter(',');
  f->add_option("--asce-ds", fa.asce_ds, "Constant design inundation depth for the ASCE envelope [m]");
  f->add_option("--cp", fa.cp, "ASCE dynamic pressure coefficient");
  f->add_option("--cd", fa.cd, "Drag coefficient");
  f->add_option("--area", fa.area, "Frontal area [m^2]");
  f->add_option("--width", fa.width, "Structure width [m]");

  UqArgs ua;
  auto* u = app.add_subcommand("uq", "Latin hypercube sweep of the structural response over a force library");
  u->add_option("--library", ua.library, "Directory of simulated runs")->required();
  u->add_option("--spec", ua.spec, "Random-variable spec file")->check(CLI::ExistingFile);
  u->add_option("-o,--out", ua.out, "Output directory");
  u->add_option("-q,--samples", ua.q, "Number of samples")->check(CLI::PositiveNumber);
  u->add_option("--seed", ua.seed, "Sampling seed");
  u->add_option("-j,--jobs", ua.jobs, "Worker threads (capped by FLUME_UQ_THREADS)")->check(CLI::PositiveNumber);
  u->add_flag("--distribution-study", ua.study, "Compare the five load-factor distributions");
  u->add_option("--heights", ua.heights, "Restrict to these wave heights")->delimiter(',');
  u->add_option("--bandwidth", ua.bandwidth, "Fixed KDE bandwidth (default Silverman)");
  u->add_option("--failure-threshold", ua.failure_threshold, "Failed-row fraction that makes the sweep partial");

  std::string report_run;
  std::string report_out = "report";
  auto* r = app.add_subcommand("report", "Write normalised, plot-ready tables for a run or stage directory");
  r->add_option("run", report_run, "Directory with a manifest")->required();
  r->add_option("-o,--out", report_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*s) {
      g_stage = "simulate";
      return cmd_simulate(sim);
    }
    if (*f) {
      g_stage = "forces";
      return cmd_forces(fa);
    }
    if (*u) {
      g_stage = "uq";
      return cmd_uq(ua);
    }
    g_stage = "report";
    return cmd_report(report_run, report_out);
  } catch (const StageError& e) {
    return report_failure(e.status);
  } catch (const std::exception& e) {
    std::cerr << "flume " << g_stage << ": error [internal]: " << e.what() << '\n';
    return 3;
  }
}
