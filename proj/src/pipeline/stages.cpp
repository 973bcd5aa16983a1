#include "pipeline/stages.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "flume/gauges.hpp"
#include "flume/seeding.hpp"
#include "pipeline/manifest.hpp"
#include "sph/snapshot.hpp"
#include "uq/lhs.hpp"
#include "uq/statistics.hpp"

namespace flume::pipeline {
namespace {

constexpr const char* kModelVersion = "flume-wcsph-2";

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::Io, "cannot write " + path.string());
  return os;
}

std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

void require_file(const fs::path& p) {
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) fail(ErrorCode::MissingInput, "missing input " + p.string());
}

/// Removes the artefacts a stage is about to regenerate, leaving anything
/// else in the directory alone.
void clear_outputs(const fs::path& dir, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    std::error_code ec;
    fs::remove_all(dir / n, ec);
  }
}

double max_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

setup::FlumeScenario load_scenario(const std::optional<fs::path>& file, const setup::ConfigMap& overrides) {
  setup::ConfigMap cfg;
  if (file) cfg = setup::read_config_file(*file);
  for (const auto& [k, v] : overrides) cfg[k] = v;
  return setup::build_scenario(cfg);
}

std::string config_hash(const setup::FlumeScenario& scn) {
  std::string text = std::string(kModelVersion) + '\n';
  for (const auto& [k, v] : setup::to_config_map(scn)) text += k + '=' + v + '\n';
  return sha256_hex(text);
}

std::string run_key(const setup::FlumeScenario& scn) {
  return "H" + fixed(scn.wave_height, 2) + "_dp" + fixed(scn.dp, 3) + "_" + config_hash(scn).substr(0, 12);
}

SimulateResult run_simulate(const setup::FlumeScenario& scn, const SimulateOptions& opts) {
  const auto t_start = Clock::now();
  setup::validate(scn);
  SimulateResult result;
  result.run_dir = opts.library ? *opts.library / run_key(scn) : opts.out_dir;
  if (result.run_dir.empty()) fail(ErrorCode::Config, "no output directory given");
  const fs::path& dir = result.run_dir;
  const std::string hash = config_hash(scn);

  if (opts.library && fs::exists(dir / kManifestName)) {
    const RunManifest m = read_manifest(dir);
    if (m.kind == "simulate" && m.config_hash == hash && verify_manifest(dir, m)) {
      result.cached = true;
      for (const auto& s : m.stages) {
        if (s.name == "sph") {
          result.particles = s.particles;
          result.fluid_particles = s.fluid_particles;
        }
      }
      if (fs::exists(dir / "forces" / "sph.csv")) {
        result.peak_sph_force = forces::read_force_csv(dir / "forces" / "sph.csv").peak();
      }
      if (opts.progress) opts.progress("cached run " + dir.string());
      return result;
    }
  }

  fs::create_directories(dir);
  clear_outputs(dir, {"gauges", "forces", "snapshots", "scenario.ini", "structure_flow.csv", kManifestName});
  fs::create_directories(dir / "gauges");
  setup::write_config_file(dir / "scenario.ini", setup::to_config_map(scn));

  setup::SeededFlume seeded = setup::seed_particles(scn);
  const std::vector<std::uint32_t> structure_indices = seeded.structure_indices;
  const setup::StructureBox box = seeded.structure;
  const bool has_structure = seeded.has_structure;
  result.particles = seeded.state.particles.size();
  result.fluid_particles = seeded.fluid_count();
  sph::Simulation sim = setup::make_simulation(scn, std::move(seeded));

  const double dp = scn.dp;
  const double d = scn.still_water_depth;
  const double half_width = scn.gauge_half_width * dp;
  double hb_x = box.x_min - 0.25;
  if (const auto* g = scn.find_gauge("WG8")) hb_x = g->x_position;

  std::vector<setup::GaugeTrace> traces;
  for (const auto& g : scn.gauges) {
    setup::GaugeTrace t;
    t.id = g.id;
    t.x_position = g.x_position;
    t.still_water_depth = d;
    traces.push_back(std::move(t));
  }
  forces::ForceRecord sph_force;
  sph_force.estimator = forces::Estimator::Sph;
  StructureFlow flow;

  const bool snapshots = scn.snapshot_dt > 0.0;
  if (snapshots) fs::create_directories(dir / "snapshots");
  double next_snapshot = 0.0;
  int snapshot_index = 0;

  auto record = [&]() {
    const auto& st = sim.state();
    const double t = st.time;
    for (auto& tr : traces) {
      tr.times.push_back(t);
      tr.eta.push_back(setup::sample_gauge(st, tr.x_position, half_width, dp, d));
    }
    if (has_structure) {
      sph_force.times.push_back(t);
      sph_force.force.push_back(forces::sph_structure_force(st, structure_indices, box, sim.kernel(), sim.fluid()));
      flow.times.push_back(t);
      flow.veff.push_back(forces::effective_velocity(st, box, dp));
      flow.hb.push_back(setup::sample_gauge(st, hb_x, half_width, dp, d) + d);
    }
    if (snapshots && t >= next_snapshot - 1e-9) {
      std::ostringstream name;
      name << "snap_" << std::setw(5) << std::setfill('0') << snapshot_index++ << ".csv";
      sph::write_snapshot(dir / "snapshots" / name.str(), st);
      next_snapshot += scn.snapshot_dt;
    }
  };

  record();
  const auto n_out = static_cast<long>(std::floor(scn.duration / scn.output_dt + 1e-9));
  double next_report = 1.0;
  for (long k = 1; k <= n_out; ++k) {
    sim.advance_to(static_cast<double>(k) * scn.output_dt);
    record();
    if (opts.progress && sim.state().time >= next_report - 1e-9) {
      opts.progress("t=" + fixed(sim.state().time, 2) + " s, steps=" + std::to_string(sim.state().step_count) +
                    ", wall " + fixed(seconds_since(t_start), 1) + " s");
      next_report += 1.0;
    }
  }

  for (const auto& tr : traces) setup::write_trace_csv(dir / "gauges" / (tr.id + ".csv"), tr);
  if (has_structure) {
    fs::create_directories(dir / "forces");
    forces::write_force_csv(dir / "forces" / "sph.csv", sph_force);
    auto os = open_out(dir / "structure_flow.csv");
    os << "t,t_T0,veff,hb,froude\n";
    for (std::size_t i = 0; i < flow.times.size(); ++i) {
      os << csv::num(flow.times[i]) << ',' << csv::num(flow.times[i] / setup::kT0) << ','
         << csv::num(flow.veff[i]) << ',' << csv::num(flow.hb[i]) << ','
         << csv::num(forces::froude_number(flow.veff[i], d, scn.g).value) << '\n';
    }
    result.peak_sph_force = sph_force.peak();
  }

  result.steps = sim.state().step_count;
  result.seconds = seconds_since(t_start);
  RunManifest m;
  m.kind = "simulate";
  m.config_hash = hash;
  m.scenarios.push_back({scn.wave_height, scn.dp, ""});
  m.stages.push_back({"sph", result.seconds, result.particles, result.fluid_particles});
  write_manifest(dir, std::move(m));
  return result;
}

StructureFlow read_structure_flow(const fs::path& run_dir) {
  require_file(run_dir / "structure_flow.csv");
  const csv::Table t = csv::read(run_dir / "structure_flow.csv");
  StructureFlow f;
  f.times = t.numbers("t");
  f.veff = t.numbers("veff");
  f.hb = t.numbers("hb");
  return f;
}

std::vector<ForcesSummaryRow> run_forces(const ForcesOptions& opts) {
  const auto t_start = Clock::now();
  if (opts.run_dirs.empty()) fail(ErrorCode::MissingInput, "no run directories given");
  if (opts.out_dir.empty()) fail(ErrorCode::Config, "no output directory given");
  if (!(opts.f0 > 0.0)) fail(ErrorCode::InvalidArgument, "F0 must be positive");

  // Load everything first so a missing input leaves no partial output.
  struct Loaded {
    std::string name;
    setup::FlumeScenario scn;
    StructureFlow flow;
    forces::ForceRecord sph;
  };
  std::vector<Loaded> runs;
  for (const auto& dir : opts.run_dirs) {
    require_file(dir / "scenario.ini");
    Loaded l;
    l.name = fs::absolute(dir).lexically_normal().filename().string();
    if (l.name.empty()) l.name = fs::absolute(dir).lexically_normal().parent_path().filename().string();
    l.scn = setup::build_scenario(setup::read_config_file(dir / "scenario.ini"));
    if (!l.scn.has_structure) fail(ErrorCode::MissingInput, dir.string() + " has no structure");
    l.flow = read_structure_flow(dir);
    if (opts.sph) {
      require_file(dir / "forces" / "sph.csv");
      l.sph = forces::read_force_csv(dir / "forces" / "sph.csv");
    }
    runs.push_back(std::move(l));
  }
  std::sort(runs.begin(), runs.end(),
            [](const Loaded& a, const Loaded& b) { return a.scn.wave_height < b.scn.wave_height; });

  fs::create_directories(opts.out_dir);
  clear_outputs(opts.out_dir, {"forces_summary.csv", "froude.csv", kManifestName});
  std::vector<ForcesSummaryRow> summary;
  RunManifest manifest;
  manifest.kind = "forces";

  for (auto& run : runs) {
    const fs::path out = opts.out_dir / run.name;
    fs::remove_all(out);
    fs::create_directories(out);
    const double d = run.scn.still_water_depth;
    const auto box = run.scn.structure_box();
    ForcesSummaryRow row;
    row.run = run.name;
    row.wave_height = run.scn.wave_height;

    forces::ForceRecord asce, semi;
    if (opts.sph) {
      run.sph.f0 = opts.f0;
      forces::write_force_csv(out / "sph.csv", run.sph);
      row.peak_sph = run.sph.peak();
    }
    if (opts.asce) {
      if (opts.asce_ds) {
        asce = forces::asce_envelope({opts.cp, run.scn.rho0 * run.scn.g, *opts.asce_ds}, box.width_y);
      } else {
        setup::GaugeTrace front;
        front.times = run.flow.times;
        for (double hb : run.flow.hb) front.eta.push_back(hb - d);
        asce = forces::asce_history(front, d, box.z_min, box.width_y, opts.cp, run.scn.rho0 * run.scn.g);
      }
      asce.f0 = opts.f0;
      forces::write_force_csv(out / "asce.csv", asce);
      row.peak_asce = asce.peak();
    }
    if (opts.semi_empirical) {
      semi = forces::semi_empirical_force(run.flow.times, run.flow.hb, run.flow.veff, opts.semi);
      semi.f0 = opts.f0;
      forces::write_force_csv(out / "semi_empirical.csv", semi);
      row.peak_semi = semi.peak();
    }

    {
      auto os = open_out(out / "comparison.csv");
      os << "t,t_T0";
      if (opts.sph) os << ",sph_F,sph_F_F0";
      if (opts.asce && !opts.asce_ds) os << ",asce_F,asce_F_F0";
      if (opts.semi_empirical) os << ",semi_F,semi_F_F0";
      os << '\n';
      for (std::size_t i = 0; i < run.flow.times.size(); ++i) {
        const double t = run.flow.times[i];
        os << csv::num(t) << ',' << csv::num(t / setup::kT0);
        auto put = [&](const forces::ForceRecord& r) {
          const double f = i < r.force.size() ? r.force[i] : 0.0;
          os << ',' << csv::num(f) << ',' << csv::num(f / opts.f0);
        };
        if (opts.sph) put(run.sph);
        if (opts.asce && !opts.asce_ds) put(asce);
        if (opts.semi_empirical) put(semi);
        os << '\n';
      }
    }

    row.max_veff = max_of(run.flow.veff);
    row.max_froude = forces::froude_number(row.max_veff, d, run.scn.g).value;
    summary.push_back(row);
    manifest.scenarios.push_back({run.scn.wave_height, run.scn.dp, run.name});
  }

  {
    auto os = open_out(opts.out_dir / "forces_summary.csv");
    os << "run,wave_height,peak_sph,peak_asce,peak_semi_empirical,peak_sph_F0,peak_asce_F0,peak_semi_empirical_F0\n";
    for (const auto& r : summary) {
      os << r.run << ',' << csv::num(r.wave_height) << ',' << csv::num(r.peak_sph) << ',' << csv::num(r.peak_asce)
         << ',' << csv::num(r.peak_semi) << ',' << csv::num(r.peak_sph / opts.f0) << ','
         << csv::num(r.peak_asce / opts.f0) << ',' << csv::num(r.peak_semi / opts.f0) << '\n';
    }
  }
  {
    auto os = open_out(opts.out_dir / "froude.csv");
    os << "run,wave_height,max_veff,max_froude,regime\n";
    for (const auto& r : summary) {
      const auto fr = forces::froude_number(r.max_veff, runs.front().scn.still_water_depth, runs.front().scn.g);
      os << r.run << ',' << csv::num(r.wave_height) << ',' << csv::num(r.max_veff) << ','
         << csv::num(r.max_froude) << ',' << forces::to_string(fr.regime) << '\n';
    }
  }

  manifest.config_hash = sha256_hex([&] {
    std::string s = "forces cp=" + csv::num(opts.cp) + " cd=" + csv::num(opts.semi.cd) + " A=" +
                    csv::num(opts.semi.area) + " f0=" + csv::num(opts.f0);
    if (opts.asce_ds) s += " ds=" + csv::num(*opts.asce_ds);
    for (const auto& r : runs) s += " " + config_hash(r.scn);
    return s;
  }());
  manifest.stages.push_back({"forces", seconds_since(t_start), 0, 0});
  write_manifest(opts.out_dir, std::move(manifest));
  return summary;
}

uq::LoadLibrary load_library(const fs::path& library, const std::vector<double>& heights) {
  std::error_code ec;
  if (!fs::is_directory(library, ec)) fail(ErrorCode::MissingInput, "force library " + library.string() + " not found");
  std::map<long, std::pair<double, fs::path>> by_height;  // key: height in mm
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(library)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  if (fs::exists(library / "scenario.ini")) dirs.push_back(library);
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    if (!fs::exists(dir / "scenario.ini") || !fs::exists(dir / "forces" / "sph.csv")) continue;
    const auto scn = setup::build_scenario(setup::read_config_file(dir / "scenario.ini"));
    const long key = std::lround(scn.wave_height * 1000.0);
    if (!heights.empty() && std::none_of(heights.begin(), heights.end(),
                                         [&](double h) { return std::lround(h * 1000.0) == key; })) {
      continue;
    }
    if (by_height.count(key)) {
      fail(ErrorCode::Config, "several runs for wave height " + csv::num(scn.wave_height) + " in " +
                                  library.string() + " (" + by_height[key].second.filename().string() + ", " +
                                  dir.filename().string() + ")");
    }
    by_height[key] = {scn.wave_height, dir};
  }
  for (double h : heights) {
    if (!by_height.count(std::lround(h * 1000.0))) {
      fail(ErrorCode::MissingInput, "no force history for wave height " + csv::num(h) + " in " + library.string());
    }
  }
  if (by_height.empty()) fail(ErrorCode::MissingInput, "no force histories in " + library.string());
  uq::LoadLibrary lib;
  for (const auto& [key, entry] : by_height) {
    lib.wave_heights.push_back(entry.first);
    lib.records.push_back(forces::read_force_csv(entry.second / "forces" / "sph.csv"));
  }
  return lib;
}

namespace {

struct Group {
  std::string distribution;
  double wave_height;
  std::vector<double> rmsa;
};

void write_edp_rows(std::ostream& os, const std::string& distribution, const uq::EdpTable& table,
                    std::size_t stories) {
  for (const auto& r : table.rows) {
    os << distribution << ',' << r.sample_id << ',' << csv::num(r.wave_height) << ',' << csv::num(r.load_factor)
       << ',' << csv::num(r.rmsa) << ',' << csv::num(r.peak_displacement);
    for (std::size_t s = 0; s < stories; ++s) {
      os << ',' << (s < r.story_rmsa.size() ? csv::num(r.story_rmsa[s]) : "");
    }
    for (std::size_t s = 0; s < stories; ++s) {
      os << ',' << (s < r.story_peak_displacement.size() ? csv::num(r.story_peak_displacement[s]) : "");
    }
    os << ',' << csv::num(r.period) << ',' << (r.yielded ? 1 : 0) << ',' << (r.failed ? 1 : 0) << ',';
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    os << err << '\n';
  }
}

}  // namespace

UqResult run_uq(const UqOptions& opts) {
  const auto t_start = Clock::now();
  if (opts.q < 1) fail(ErrorCode::InvalidArgument, "q must be at least 1");
  if (opts.out_dir.empty()) fail(ErrorCode::Config, "no output directory given");
  std::vector<uq::RandomVariableSpec> specs =
      opts.spec_file ? uq::read_spec_file(*opts.spec_file) : uq::default_structural_specs();
  const uq::LoadLibrary lib = load_library(opts.library, opts.heights);
  const std::size_t stories = static_cast<std::size_t>(opts.propagation.geometry.n_stories);

  std::vector<std::pair<std::string, std::vector<uq::RandomVariableSpec>>> cases;
  if (opts.distribution_study) {
    std::vector<uq::RandomVariableSpec> base;
    for (const auto& s : specs) {
      if (s.name != "load_factor") base.push_back(s);
    }
    for (const auto& lf : uq::load_factor_study_specs()) {
      auto v = base;
      v.push_back(lf);
      cases.emplace_back(std::string(uq::to_string(lf.distribution)), std::move(v));
    }
  } else {
    std::string label = "constant";
    for (const auto& s : specs) {
      if (s.name == "load_factor") label = std::string(uq::to_string(s.distribution));
    }
    cases.emplace_back(label, specs);
  }

  fs::create_directories(opts.out_dir);
  clear_outputs(opts.out_dir, {"samples.csv", "edp.csv", "kde.csv", "boxplot.csv", "summary.csv", kManifestName});
  for (const auto& entry : fs::directory_iterator(opts.out_dir)) {
    const std::string n = entry.path().filename().string();
    if (n.rfind("edp_", 0) == 0 || n.rfind("samples_", 0) == 0) fs::remove(entry.path());
  }

  const std::vector<std::size_t> height_index =
      uq::stratified_levels(opts.q, lib.size(), opts.seed ^ 0x9E3779B97F4A7C15ULL);
  uq::PropagationConfig cfg = opts.propagation;
  cfg.jobs = uq::effective_jobs(opts.jobs);

  UqResult result;
  result.wave_heights = lib.wave_heights;
  std::vector<Group> groups;

  auto edp_header = [&](std::ostream& os) {
    os << "distribution,sample_id,wave_height,load_factor,rmsa,peak_disp";
    for (std::size_t s = 1; s <= stories; ++s) os << ",rmsa_s" << s;
    for (std::size_t s = 1; s <= stories; ++s) os << ",peak_disp_s" << s;
    os << ",period,yielded,failed,error\n";
  };
  auto edp_all = open_out(opts.out_dir / "edp.csv");
  edp_header(edp_all);

  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& [label, case_specs] = cases[c];
    const uq::SampleMatrix samples = uq::lhs_sample(case_specs, opts.q, opts.seed);
    {
      auto os = open_out(opts.out_dir / (cases.size() > 1 ? "samples_" + label + ".csv" : "samples.csv"));
      os << "sample_id";
      for (const auto& s : samples.specs) os << ',' << s.name;
      os << ",wave_height\n";
      for (std::size_t i = 0; i < samples.rows(); ++i) {
        os << i;
        for (double v : samples.values[i]) os << ',' << csv::num(v);
        os << ',' << csv::num(lib.wave_heights[height_index[i]]) << '\n';
      }
    }
    if (opts.progress) opts.progress("propagating " + std::to_string(opts.q) + " samples (" + label + ")");
    const uq::EdpTable table = uq::propagate(samples, height_index, lib, cfg);
    write_edp_rows(edp_all, label, table, stories);
    if (cases.size() > 1) {
      auto os = open_out(opts.out_dir / ("edp_" + label + ".csv"));
      edp_header(os);
      write_edp_rows(os, label, table, stories);
    }
    result.rows += table.rows.size();
    result.failures += table.failures;
    if (table.failure_fraction() > cfg.failure_threshold) result.partial_failure = true;

    for (std::size_t h = 0; h < lib.size(); ++h) {
      Group g{label, lib.wave_heights[h], {}};
      for (const auto& r : table.rows) {
        if (!r.failed && r.height_index == h) g.rmsa.push_back(r.rmsa);
      }
      groups.push_back(std::move(g));
    }
  }

  {
    auto os = open_out(opts.out_dir / "boxplot.csv");
    os << "distribution,wave_height,n,q1,median,q3,iqr,lower_fence,upper_fence,whisker_low,whisker_high,min,max,"
          "n_outliers,outliers\n";
    for (const auto& g : groups) {
      if (g.rmsa.empty()) continue;
      const auto b = uq::boxplot_stats(g.rmsa);
      os << g.distribution << ',' << csv::num(g.wave_height) << ',' << g.rmsa.size() << ',' << csv::num(b.q1) << ','
         << csv::num(b.median) << ',' << csv::num(b.q3) << ',' << csv::num(b.iqr) << ','
         << csv::num(b.lower_fence) << ',' << csv::num(b.upper_fence) << ',' << csv::num(b.whisker_low) << ','
         << csv::num(b.whisker_high) << ',' << csv::num(b.min) << ',' << csv::num(b.max) << ','
         << b.outliers.size() << ',';
      for (std::size_t i = 0; i < b.outliers.size(); ++i) os << (i ? ";" : "") << csv::num(b.outliers[i]);
      os << '\n';
    }
  }
  {
    auto os = open_out(opts.out_dir / "kde.csv");
    os << "distribution,group,bandwidth,x,density\n";
    auto emit = [&](const std::string& dist, const std::string& group, const std::vector<double>& v) {
      if (v.size() < 2 && !opts.bandwidth) return;
      if (v.empty()) return;
      const auto kde = uq::kde_estimate(v, opts.bandwidth);
      for (std::size_t i = 0; i < kde.grid.size(); ++i) {
        os << dist << ',' << group << ',' << csv::num(kde.bandwidth) << ',' << csv::num(kde.grid[i]) << ','
           << csv::num(kde.density[i]) << '\n';
      }
    };
    std::map<std::string, std::vector<double>> all;
    for (const auto& g : groups) {
      emit(g.distribution, "H" + fixed(g.wave_height, 2), g.rmsa);
      auto& a = all[g.distribution];
      a.insert(a.end(), g.rmsa.begin(), g.rmsa.end());
    }
    for (const auto& [dist, v] : all) emit(dist, "all", v);
  }
  {
    auto os = open_out(opts.out_dir / "summary.csv");
    os << "distribution,wave_height,n,mean_rmsa,max_rmsa\n";
    for (const auto& g : groups) {
      double mean = 0.0;
      for (double v : g.rmsa) mean += v;
      mean = g.rmsa.empty() ? 0.0 : mean / static_cast<double>(g.rmsa.size());
      os << g.distribution << ',' << csv::num(g.wave_height) << ',' << g.rmsa.size() << ',' << csv::num(mean)
         << ',' << csv::num(max_of(g.rmsa)) << '\n';
      if (opts.progress) {
        opts.progress(g.distribution + " H=" + fixed(g.wave_height, 2) + " n=" + std::to_string(g.rmsa.size()) +
                      " mean RMSA=" + fixed(mean, 4) + " max RMSA=" + fixed(max_of(g.rmsa), 4));
      }
    }
  }
  edp_all.close();

  RunManifest m;
  m.kind = "uq";
  m.seed = opts.seed;
  {
    std::string s = "uq q=" + std::to_string(opts.q) + " study=" + (opts.distribution_study ? "1" : "0");
    for (const auto& [label, cs] : cases) {
      s += " " + label;
      for (const auto& sp : cs) s += ":" + sp.name + "/" + std::string(uq::to_string(sp.distribution));
    }
    for (std::size_t h = 0; h < lib.size(); ++h) s += " " + csv::num(lib.wave_heights[h]);
    m.config_hash = sha256_hex(s);
  }
  for (double h : lib.wave_heights) m.scenarios.push_back({h, 0.0, ""});
  m.stages.push_back({"uq", seconds_since(t_start), 0, 0});
  write_manifest(opts.out_dir, std::move(m));
  return result;
}

std::vector<std::string> run_report(const fs::path& run_dir, const fs::path& out_dir) {
  const RunManifest src = read_manifest(run_dir);
  if (out_dir.empty()) fail(ErrorCode::Config, "no output directory given");
  fs::create_directories(out_dir);
  std::vector<std::string> written;
  auto out = [&](const std::string& name) {
    written.push_back(name);
    return open_out(out_dir / name);
  };

  if (src.kind == "simulate") {
    if (fs::is_directory(run_dir / "gauges")) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(run_dir / "gauges")) files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        const auto tr = setup::read_trace_csv(f);
        auto os = out("wg_" + tr.id + ".csv");
        os << "t_T0,eta_eta0\n";
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
          os << csv::num(tr.times[i] / setup::kT0) << ',' << csv::num(tr.eta[i] / setup::kEta0) << '\n';
        }
      }
    }
    if (fs::exists(run_dir / "forces" / "sph.csv")) {
      const auto rec = forces::read_force_csv(run_dir / "forces" / "sph.csv");
      auto os = out("force_sph.csv");
      os << "t_T0,F_F0\n";
      for (std::size_t i = 0; i < rec.times.size(); ++i) {
        os << csv::num(rec.times[i] / setup::kT0) << ',' << csv::num(rec.force[i] / rec.f0) << '\n';
      }
    }
    if (fs::exists(run_dir / "structure_flow.csv")) {
      const csv::Table t = csv::read(run_dir / "structure_flow.csv");
      const auto tt = t.numbers("t_T0");
      const auto fr = t.numbers("froude");
      auto os = out("froude_trace.csv");
      os << "t_T0,froude\n";
      for (std::size_t i = 0; i < tt.size(); ++i) os << csv::num(tt[i]) << ',' << csv::num(fr[i]) << '\n';
    }
  } else if (src.kind == "forces") {
    for (const auto& s : src.scenarios) {
      const fs::path cmp = run_dir / s.run / "comparison.csv";
      if (!fs::exists(cmp)) continue;
      const csv::Table t = csv::read(cmp);
      std::vector<std::string> cols{"t_T0"};
      for (const auto& h : t.header) {
        if (h.size() > 5 && h.substr(h.size() - 5) == "_F_F0") cols.push_back(h);
      }
      auto os = out("force_comparison_" + s.run + ".csv");
      for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
      os << '\n';
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
          os << (c ? "," : "") << t.rows[r][t.column(cols[c])];
        }
        os << '\n';
      }
    }
    for (const char* name : {"forces_summary.csv", "froude.csv"}) {
      if (!fs::exists(run_dir / name)) continue;
      std::ifstream is(run_dir / name);
      auto os = out(name);
      os << is.rdbuf();
    }
  } else if (src.kind == "uq") {
    require_file(run_dir / "edp.csv");
    const csv::Table t = csv::read(run_dir / "edp.csv");
    std::map<std::pair<std::string, double>, std::vector<double>> groups;
    auto points = out("rmsa_points.csv");
    points << "distribution,wave_height,rmsa,peak_disp\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (t.number(r, t.column("failed")) != 0.0) continue;
      const std::string dist = t.rows[r][t.column("distribution")];
      const double h = t.number(r, t.column("wave_height"));
      const double a = t.number(r, t.column("rmsa"));
      groups[{dist, h}].push_back(a);
      points << dist << ',' << csv::num(h) << ',' << csv::num(a) << ',' << t.rows[r][t.column("peak_disp")] << '\n';
    }
    auto os = out("rmsa_vs_height.csv");
    os << "distribution,wave_height,n,mean,min,median,max\n";
    for (const auto& [key, v] : groups) {
      std::vector<double> s = v;
      std::sort(s.begin(), s.end());
      double mean = 0.0;
      for (double x : s) mean += x;
      mean /= static_cast<double>(s.size());
      os << key.first << ',' << csv::num(key.second) << ',' << s.size() << ',' << csv::num(mean) << ','
         << csv::num(s.front()) << ',' << csv::num(uq::quantile_sorted(s, 0.5)) << ',' << csv::num(s.back())
         << '\n';
    }
    if (fs::exists(run_dir / "boxplot.csv")) {
      std::ifstream is(run_dir / "boxplot.csv");
      auto bx = out("rmsa_boxplot.csv");
      bx << is.rdbuf();
    }
  } else {
    fail(ErrorCode::MissingInput, "nothing to report for a '" + src.kind + "' directory");
  }
  if (written.empty()) fail(ErrorCode::MissingInput, "no reportable tables in " + run_dir.string());

  RunManifest m;
  m.kind = "report";
  m.config_hash = src.config_hash;
  m.seed = src.seed;
  m.scenarios = src.scenarios;
  write_manifest(out_dir, std::move(m));
  return written;
}

}  // namespace flume::pipeline
