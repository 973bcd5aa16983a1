#include "flume/flume.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "flume/gauges.hpp"
#include "flume/scenario.hpp"
#include "flume/seeding.hpp"
#include "forces/forces.hpp"
#include "pipeline/stages.hpp"
#include "sph/fluid.hpp"
#include "sph/kernel.hpp"
#include "sph/snapshot.hpp"
#include "sph/solver.hpp"
#include "sph/wavemaker.hpp"
#include "structural/frame.hpp"
#include "uq/lhs.hpp"
#include "uq/random_variable.hpp"
#include "uq/statistics.hpp"

using namespace flume;

struct flume_scenario {
  setup::ConfigMap overrides;
  setup::FlumeScenario scn;
};

struct flume_sim {
  sph::Simulation sim;
  std::vector<std::uint32_t> structure;
  setup::StructureBox box;
  bool has_structure = false;
  double dp = 0.0;
  double depth = 0.0;
  double gauge_half_width = 2.0;
};

struct flume_frame {
  structural::ShearFrameModel model;
};

namespace {

thread_local std::string g_last_error;

struct BufferTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

flume_status to_status(ErrorCode code) noexcept {
  // ErrorCode values mirror flume_status one to one.
  return static_cast<flume_status>(static_cast<int>(code));
}

template <class F>
flume_status guarded(F&& body) noexcept {
  try {
    g_last_error.clear();
    body();
    return FLUME_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const BufferTooSmall& e) {
    g_last_error = e.what();
    return FLUME_ERR_BUFFER_TOO_SMALL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FLUME_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FLUME_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return FLUME_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

void copy_out(const std::string& s, char* buf, size_t len) {
  if (buf == nullptr || s.size() + 1 > len) {
    throw BufferTooSmall("buffer too small: need " + std::to_string(s.size() + 1) + " bytes");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

uq::RandomVariableSpec to_spec(const flume_random_variable& rv) {
  uq::RandomVariableSpec s;
  s.name = rv.name ? rv.name : "";
  switch (rv.distribution) {
    case FLUME_DIST_CONSTANT: s.distribution = uq::Distribution::Constant; break;
    case FLUME_DIST_NORMAL: s.distribution = uq::Distribution::Normal; break;
    case FLUME_DIST_LOGNORMAL: s.distribution = uq::Distribution::Lognormal; break;
    case FLUME_DIST_UNIFORM: s.distribution = uq::Distribution::Uniform; break;
    case FLUME_DIST_BETA: s.distribution = uq::Distribution::Beta; break;
    default: fail(ErrorCode::InvalidSpec, "unknown distribution");
  }
  s.value = rv.value;
  s.mean = rv.mean;
  s.sd = rv.sd;
  s.min = rv.min;
  s.max = rv.max;
  s.alpha = rv.alpha;
  s.beta = rv.beta;
  if (rv.has_floor) s.floor = rv.floor;
  s.validate();
  return s;
}

flume_sim* wrap(setup::SeededFlume seeded, sph::Simulation sim, double depth, double half_width) {
  auto* out = new flume_sim{std::move(sim), std::move(seeded.structure_indices), seeded.structure,
                            seeded.has_structure, seeded.dp, depth, half_width};
  return out;
}

}  // namespace

extern "C" {

const char* flume_version(void) { return "1.0.0"; }

const char* flume_last_error(void) { return g_last_error.c_str(); }

const char* flume_status_name(flume_status status) {
  if (status == FLUME_OK) return "ok";
  if (status == FLUME_ERR_BUFFER_TOO_SMALL) return "buffer_too_small";
  if (status > FLUME_OK && status <= FLUME_ERR_INTERNAL) {
    static thread_local std::string name;
    name = std::string(to_string(static_cast<ErrorCode>(status)));
    return name.c_str();
  }
  return "unknown";
}

int flume_exit_code(flume_status status) {
  switch (status) {
    case FLUME_OK: return 0;
    case FLUME_ERR_PARTIAL_FAILURE: return 4;
    case FLUME_ERR_INVALID_ARGUMENT:
    case FLUME_ERR_INVALID_GEOMETRY:
    case FLUME_ERR_RESOLUTION_TOO_COARSE:
    case FLUME_ERR_CONFIG:
    case FLUME_ERR_IO:
    case FLUME_ERR_MISSING_INPUT:
    case FLUME_ERR_COEFFICIENT_OUT_OF_RANGE:
    case FLUME_ERR_LENGTH_MISMATCH:
    case FLUME_ERR_NON_POSITIVE_DEPTH:
    case FLUME_ERR_INVALID_PARAMS:
    case FLUME_ERR_INVALID_SPEC:
    case FLUME_ERR_DOMAIN:
    case FLUME_ERR_TOO_FEW_SAMPLES:
    case FLUME_ERR_BUFFER_TOO_SMALL:
      return 2;
    default:
      return 3;
  }
}

/* Scenario */

flume_status flume_scenario_create(flume_scenario** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new flume_scenario{{}, setup::build_scenario()};
  });
}

flume_status flume_scenario_load(const char* path, flume_scenario** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    auto cfg = setup::read_config_file(path);
    auto scn = setup::build_scenario(cfg);
    *out = new flume_scenario{std::move(cfg), std::move(scn)};
  });
}

flume_status flume_scenario_create_flat(double length, double depth, double wave_height, double dp,
                                        flume_scenario** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    setup::ConfigMap m{
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
    auto scn = setup::build_scenario(m);
    *out = new flume_scenario{std::move(m), std::move(scn)};
  });
}

void flume_scenario_destroy(flume_scenario* scn) { delete scn; }

flume_status flume_scenario_set_many(flume_scenario* scn, const char* const* keys, const char* const* values,
                                     size_t n) {
  return guarded([&] {
    require(scn != nullptr, "null scenario");
    require(n == 0 || (keys != nullptr && values != nullptr), "null key or value array");
    setup::ConfigMap next = scn->overrides;
    for (size_t i = 0; i < n; ++i) {
      require(keys[i] != nullptr && values[i] != nullptr, "null key or value");
      next[keys[i]] = values[i];
    }
    auto built = setup::build_scenario(next);
    scn->overrides = std::move(next);
    scn->scn = std::move(built);
  });
}

flume_status flume_scenario_set(flume_scenario* scn, const char* key, const char* value) {
  return flume_scenario_set_many(scn, &key, &value, 1);
}

flume_status flume_scenario_get(const flume_scenario* scn, const char* key, char* buf, size_t len) {
  return guarded([&] {
    require(scn != nullptr && key != nullptr, "null argument");
    const auto m = setup::to_config_map(scn->scn);
    const auto it = m.find(key);
    if (it == m.end()) fail(ErrorCode::Config, std::string("unknown scenario key '") + key + "'");
    copy_out(it->second, buf, len);
  });
}

flume_status flume_scenario_get_double(const flume_scenario* scn, const char* key, double* out) {
  return guarded([&] {
    require(scn != nullptr && key != nullptr && out != nullptr, "null argument");
    const auto m = setup::to_config_map(scn->scn);
    const auto it = m.find(key);
    if (it == m.end()) fail(ErrorCode::Config, std::string("unknown scenario key '") + key + "'");
    try {
      *out = csv::parse_double(it->second);
    } catch (const Error&) {
      fail(ErrorCode::Config, std::string("key '") + key + "' is not numeric");
    }
  });
}

flume_status flume_scenario_save(const flume_scenario* scn, const char* path) {
  return guarded([&] {
    require(scn != nullptr && path != nullptr, "null argument");
    setup::write_config_file(path, setup::to_config_map(scn->scn));
  });
}

flume_status flume_scenario_hash(const flume_scenario* scn, char* buf, size_t len) {
  return guarded([&] {
    require(scn != nullptr, "null scenario");
    copy_out(pipeline::config_hash(scn->scn), buf, len);
  });
}

/* Simulation */

flume_status flume_sim_create(const flume_scenario* scn, flume_sim** out) {
  return guarded([&] {
    require(scn != nullptr && out != nullptr, "null argument");
    auto seeded = setup::seed_particles(scn->scn);
    setup::SeededFlume meta;
    meta.structure_indices = seeded.structure_indices;
    meta.structure = seeded.structure;
    meta.has_structure = seeded.has_structure;
    meta.dp = seeded.dp;
    auto sim = setup::make_simulation(scn->scn, std::move(seeded));
    *out = wrap(std::move(meta), std::move(sim), scn->scn.still_water_depth, scn->scn.gauge_half_width);
  });
}

flume_status flume_sim_create_tank(double length, double depth, double wall_height, double dp, int wall_layers,
                                   flume_sim** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    require(depth > 0.0, "tank depth must be positive");
    const auto fluid = sph::FluidConstants::for_depth(depth);
    auto seeded = setup::seed_tank(length, depth, wall_height, dp, wall_layers, fluid);
    sph::SolverConfig solver;
    solver.domain = seeded.domain;
    sph::Simulation sim(std::move(seeded.state), sph::KernelConfig::from_spacing(dp), fluid, solver);
    seeded.has_structure = true;
    *out = wrap(std::move(seeded), std::move(sim), depth, 2.0);
  });
}

void flume_sim_destroy(flume_sim* sim) { delete sim; }

flume_status flume_sim_step(flume_sim* sim, double dt) {
  return guarded([&] {
    require(sim != nullptr, "null simulation");
    sim->sim.step(dt);
  });
}

flume_status flume_sim_advance(flume_sim* sim, double t_end) {
  return guarded([&] {
    require(sim != nullptr, "null simulation");
    require(std::isfinite(t_end), "non-finite end time");
    sim->sim.advance_to(t_end);
  });
}

flume_status flume_sim_stable_dt(const flume_sim* sim, double* dt) {
  return guarded([&] {
    require(sim != nullptr && dt != nullptr, "null argument");
    *dt = sim->sim.stable_timestep();
  });
}

flume_status flume_sim_time(const flume_sim* sim, double* t) {
  return guarded([&] {
    require(sim != nullptr && t != nullptr, "null argument");
    *t = sim->sim.state().time;
  });
}

flume_status flume_sim_particle_count(const flume_sim* sim, size_t* total, size_t* fluid) {
  return guarded([&] {
    require(sim != nullptr, "null simulation");
    const auto& st = sim->sim.state();
    if (total) *total = st.particles.size();
    if (fluid) *fluid = st.count(sph::ParticleKind::Fluid);
  });
}

flume_status flume_sim_zero_velocity(flume_sim* sim) {
  return guarded([&] {
    require(sim != nullptr, "null simulation");
    sim->sim.zero_fluid_velocities();
  });
}

flume_status flume_sim_momentum(const flume_sim* sim, double* px, double* pz) {
  return guarded([&] {
    require(sim != nullptr, "null simulation");
    double x = 0.0;
    double z = 0.0;
    for (const auto& p : sim->sim.state().particles) {
      if (!p.active || !p.is_fluid()) continue;
      x += p.mass * p.velocity.x;
      z += p.mass * p.velocity.z;
    }
    if (px) *px = x;
    if (pz) *pz = z;
  });
}

flume_status flume_sim_gauge(const flume_sim* sim, double x, double* eta) {
  return guarded([&] {
    require(sim != nullptr && eta != nullptr, "null argument");
    *eta = setup::sample_gauge(sim->sim.state(), x, sim->gauge_half_width * sim->dp, sim->dp, sim->depth);
  });
}

flume_status flume_sim_mean_pressure(const flume_sim* sim, double x0, double x1, double z0, double z1, double* p) {
  return guarded([&] {
    require(sim != nullptr && p != nullptr, "null argument");
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& q : sim->sim.state().particles) {
      if (!q.active || !q.is_fluid()) continue;
      if (q.position.x < x0 || q.position.x > x1 || q.position.z < z0 || q.position.z > z1) continue;
      sum += q.pressure;
      ++n;
    }
    if (n == 0) fail(ErrorCode::InvalidArgument, "no fluid particles in the sampling box");
    *p = sum / static_cast<double>(n);
  });
}

flume_status flume_sim_structure_force(const flume_sim* sim, double* fx) {
  return guarded([&] {
    require(sim != nullptr && fx != nullptr, "null argument");
    if (!sim->has_structure) fail(ErrorCode::InvalidArgument, "simulation has no structure");
    *fx = forces::sph_structure_force(sim->sim.state(), sim->structure, sim->box, sim->sim.kernel(),
                                      sim->sim.fluid());
  });
}

flume_status flume_sim_effective_velocity(const flume_sim* sim, double* veff) {
  return guarded([&] {
    require(sim != nullptr && veff != nullptr, "null argument");
    if (!sim->has_structure) fail(ErrorCode::InvalidArgument, "simulation has no structure");
    *veff = forces::effective_velocity(sim->sim.state(), sim->box, sim->dp);
  });
}

flume_status flume_sim_write_snapshot(const flume_sim* sim, const char* path) {
  return guarded([&] {
    require(sim != nullptr && path != nullptr, "null argument");
    sph::write_snapshot(std::filesystem::path(path), sim->sim.state());
  });
}

/* Pipeline stages */

flume_status flume_run_simulate(const flume_scenario* scn, const flume_simulate_options* opts,
                                flume_simulate_result* result) {
  return guarded([&] {
    require(scn != nullptr && opts != nullptr, "null argument");
    pipeline::SimulateOptions o;
    if (opts->library_dir) {
      o.library = opts->library_dir;
    } else {
      require(opts->out_dir != nullptr, "either out_dir or library_dir is required");
      o.out_dir = opts->out_dir;
    }
    if (opts->progress) {
      auto fn = opts->progress;
      void* user = opts->user;
      o.progress = [fn, user](const std::string& msg) { fn(msg.c_str(), user); };
    }
    const auto r = pipeline::run_simulate(scn->scn, o);
    if (result) {
      result->cached = r.cached ? 1 : 0;
      result->particles = r.particles;
      result->fluid_particles = r.fluid_particles;
      result->steps = r.steps;
      result->seconds = r.seconds;
      result->peak_sph_force = r.peak_sph_force;
      const std::string dir = r.run_dir.string();
      if (dir.size() + 1 > sizeof(result->run_dir)) fail(ErrorCode::Io, "run directory path too long");
      std::memcpy(result->run_dir, dir.c_str(), dir.size() + 1);
    }
  });
}

void flume_forces_options_init(flume_forces_options* opts) {
  if (!opts) return;
  const forces::SemiEmpiricalParams semi;
  *opts = flume_forces_options{};
  opts->sph = 1;
  opts->asce = 1;
  opts->semi_empirical = 1;
  opts->cp = 3.5;
  opts->cd = semi.cd;
  opts->area = semi.area;
  opts->width = semi.width;
  opts->base_offset = semi.base_offset;
  opts->f0 = forces::kF0;
}

flume_status flume_run_forces(const flume_forces_options* opts, flume_forces_summary* rows, size_t capacity,
                              size_t* n_rows) {
  return guarded([&] {
    require(opts != nullptr && opts->out_dir != nullptr, "null argument");
    require(opts->n_run_dirs == 0 || opts->run_dirs != nullptr, "null run directory list");
    pipeline::ForcesOptions o;
    for (size_t i = 0; i < opts->n_run_dirs; ++i) {
      require(opts->run_dirs[i] != nullptr, "null run directory");
      o.run_dirs.emplace_back(opts->run_dirs[i]);
    }
    o.out_dir = opts->out_dir;
    o.sph = opts->sph != 0;
    o.asce = opts->asce != 0;
    o.semi_empirical = opts->semi_empirical != 0;
    o.cp = opts->cp;
    if (opts->use_asce_ds) o.asce_ds = opts->asce_ds;
    o.semi.cd = opts->cd;
    o.semi.area = opts->area;
    o.semi.width = opts->width;
    o.semi.base_offset = opts->base_offset;
    o.f0 = opts->f0;
    const auto summary = pipeline::run_forces(o);
    if (n_rows) *n_rows = summary.size();
    if (rows) {
      for (size_t i = 0; i < std::min(capacity, summary.size()); ++i) {
        rows[i] = flume_forces_summary{summary[i].wave_height, summary[i].peak_sph,  summary[i].peak_asce,
                                       summary[i].peak_semi,   summary[i].max_veff, summary[i].max_froude};
      }
    }
  });
}

void flume_uq_options_init(flume_uq_options* opts) {
  if (!opts) return;
  *opts = flume_uq_options{};
  opts->q = 600;
  opts->seed = 1;
  opts->jobs = 1;
  opts->failure_threshold = 0.01;
}

flume_status flume_run_uq(const flume_uq_options* opts, flume_uq_result* result) {
  bool partial = false;
  const flume_status st = guarded([&] {
    require(opts != nullptr && opts->library_dir != nullptr && opts->out_dir != nullptr, "null argument");
    require(opts->n_heights == 0 || opts->heights != nullptr, "null height list");
    pipeline::UqOptions o;
    if (opts->spec_file) o.spec_file = opts->spec_file;
    o.library = opts->library_dir;
    o.out_dir = opts->out_dir;
    o.q = opts->q;
    o.seed = opts->seed;
    o.jobs = opts->jobs == 0 ? 1 : opts->jobs;
    o.distribution_study = opts->distribution_study != 0;
    o.heights.assign(opts->heights, opts->heights + opts->n_heights);
    if (opts->use_bandwidth) o.bandwidth = opts->bandwidth;
    o.propagation.failure_threshold = opts->failure_threshold;
    if (opts->progress) {
      auto fn = opts->progress;
      void* user = opts->user;
      o.progress = [fn, user](const std::string& msg) { fn(msg.c_str(), user); };
    }
    const auto r = pipeline::run_uq(o);
    if (result) {
      result->rows = r.rows;
      result->failures = r.failures;
      result->partial_failure = r.partial_failure ? 1 : 0;
      result->n_heights = r.wave_heights.size();
    }
    partial = r.partial_failure;
    if (partial) {
      g_last_error = std::to_string(r.failures) + " of " + std::to_string(r.rows) + " samples failed";
    }
  });
  return st == FLUME_OK && partial ? FLUME_ERR_PARTIAL_FAILURE : st;
}

flume_status flume_run_report(const char* run_dir, const char* out_dir, size_t* n_files) {
  return guarded([&] {
    require(run_dir != nullptr && out_dir != nullptr, "null argument");
    const auto files = pipeline::run_report(run_dir, out_dir);
    if (n_files) *n_files = files.size();
  });
}

/* Formulas */

flume_status flume_kernel_w(double r, double h, double* w) {
  return guarded([&] {
    require(w != nullptr && h > 0.0 && r >= 0.0, "invalid kernel arguments");
    sph::KernelConfig cfg;
    cfg.h = h;
    *w = sph::wendland_w(r, cfg);
  });
}

flume_status flume_kernel_dwdr(double r, double h, double* dwdr) {
  return guarded([&] {
    require(dwdr != nullptr && h > 0.0 && r >= 0.0, "invalid kernel arguments");
    sph::KernelConfig cfg;
    cfg.h = h;
    *dwdr = sph::wendland_dwdr(r, cfg);
  });
}

flume_status flume_eos_pressure(double rho, double rho0, double c0, double gamma, double* p) {
  return guarded([&] {
    require(p != nullptr && rho > 0.0 && rho0 > 0.0 && c0 > 0.0 && gamma > 0.0, "invalid EOS arguments");
    sph::FluidConstants fc;
    fc.rho0 = rho0;
    fc.c0 = c0;
    fc.gamma = gamma;
    *p = sph::eos_pressure(rho, fc);
  });
}

flume_status flume_solitary_wave(double wave_height, double depth, double g, double* wavelength, double* celerity) {
  return guarded([&] {
    require(wave_height > 0.0 && depth > 0.0 && g > 0.0, "wave height, depth and g must be positive");
    if (wavelength) *wavelength = sph::RayleighPiston::wavelength(wave_height, depth);
    if (celerity) *celerity = sph::RayleighPiston::celerity(wave_height, depth, g);
  });
}

flume_status flume_asce_pressure(double cp, double gamma_w, double ds, double* p) {
  return guarded([&] {
    require(p != nullptr, "null output");
    *p = forces::asce_pressure(forces::AsceParams{cp, gamma_w, ds});
  });
}

flume_status flume_asce_force_per_length(double cp, double gamma_w, double ds, double* f) {
  return guarded([&] {
    require(f != nullptr, "null output");
    *f = forces::asce_force_per_length(forces::AsceParams{cp, gamma_w, ds});
  });
}

void flume_semi_empirical_params_init(flume_semi_empirical_params* p) {
  if (!p) return;
  const forces::SemiEmpiricalParams d;
  *p = flume_semi_empirical_params{d.cd, d.width, d.area, d.base_offset, d.rho, d.g};
}

flume_status flume_semi_empirical_force(const double* hb, const double* veff, size_t n,
                                        const flume_semi_empirical_params* p, double* force) {
  return guarded([&] {
    require(p != nullptr && force != nullptr, "null argument");
    require(n == 0 || (hb != nullptr && veff != nullptr), "null input arrays");
    const forces::SemiEmpiricalParams sp{p->cd, p->width, p->area, p->base_offset, p->rho, p->g};
    std::vector<double> times(n);
    for (size_t i = 0; i < n; ++i) times[i] = static_cast<double>(i);
    const auto rec = forces::semi_empirical_force(times, std::span<const double>(hb, n),
                                                  std::span<const double>(veff, n), sp);
    std::copy(rec.force.begin(), rec.force.end(), force);
  });
}

flume_status flume_froude_number(double veff, double depth, double g, double* fr, flume_flow_regime* regime) {
  return guarded([&] {
    require(fr != nullptr, "null output");
    const auto f = forces::froude_number(veff, depth, g);
    *fr = f.value;
    if (regime) {
      *regime = f.regime == forces::FlowRegime::Subcritical  ? FLUME_SUBCRITICAL
                : f.regime == forces::FlowRegime::Critical ? FLUME_CRITICAL
                                                           : FLUME_SUPERCRITICAL;
    }
  });
}

/* Structural response */

void flume_structural_params_init(flume_structural_params* p) {
  if (!p) return;
  const structural::StructuralParams d;
  *p = flume_structural_params{d.yield_strength, d.col_weight_per_len, d.beam_weight_per_len,
                               d.girder_weight_per_len, d.youngs_modulus};
}

flume_status flume_frame_build(const flume_structural_params* p, flume_frame** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const structural::StructuralParams sp{p->yield_strength, p->col_weight_per_len, p->beam_weight_per_len,
                                          p->girder_weight_per_len, p->youngs_modulus};
    *out = new flume_frame{structural::build_frame(sp)};
  });
}

flume_status flume_frame_build_custom(size_t n_stories, const double* masses, const double* stiffness,
                                      const double* yield_shear, double post_yield_ratio, double damping_ratio,
                                      double story_height, flume_frame** out) {
  return guarded([&] {
    require(out != nullptr && masses != nullptr && stiffness != nullptr && yield_shear != nullptr,
            "null argument");
    structural::ShearFrameModel m;
    m.story_masses.assign(masses, masses + n_stories);
    m.story_stiffness.assign(stiffness, stiffness + n_stories);
    m.story_yield_shear.assign(yield_shear, yield_shear + n_stories);
    m.post_yield_ratio = post_yield_ratio;
    m.damping_ratio = damping_ratio;
    m.story_height = story_height;
    m.validate();
    *out = new flume_frame{std::move(m)};
  });
}

void flume_frame_destroy(flume_frame* frame) { delete frame; }

flume_status flume_frame_stories(const flume_frame* frame, size_t* n) {
  return guarded([&] {
    require(frame != nullptr && n != nullptr, "null argument");
    *n = static_cast<size_t>(frame->model.n_stories());
  });
}

flume_status flume_frame_period(const flume_frame* frame, double* t1) {
  return guarded([&] {
    require(frame != nullptr && t1 != nullptr, "null argument");
    *t1 = structural::fundamental_period(frame->model);
  });
}

flume_status flume_frame_response(const flume_frame* frame, const double* load, size_t steps, double dt,
                                  const double* u0, double* disp, double* acc, flume_edp* edp) {
  return guarded([&] {
    require(frame != nullptr && load != nullptr, "null argument");
    const auto ns = static_cast<size_t>(frame->model.n_stories());
    std::vector<std::vector<double>> history(ns, std::vector<double>(steps));
    for (size_t k = 0; k < steps; ++k) {
      for (size_t s = 0; s < ns; ++s) history[s][k] = load[k * ns + s];
    }
    structural::ResponseOptions opts;
    if (u0) opts.initial_displacement.assign(u0, u0 + ns);
    const auto r = structural::newmark_response(frame->model, history, dt, opts);
    for (size_t k = 0; k < r.displacement_history.size() && k < steps; ++k) {
      for (size_t s = 0; s < ns; ++s) {
        if (disp) disp[k * ns + s] = r.displacement_history[k][s];
        if (acc) acc[k * ns + s] = r.acceleration_history[k][s];
      }
    }
    if (edp) *edp = flume_edp{r.rmsa_envelope, r.peak_displacement_envelope, r.yielded ? 1 : 0};
  });
}

flume_status flume_rms(const double* a, size_t n, double* out) {
  return guarded([&] {
    require(out != nullptr && (n == 0 || a != nullptr), "null argument");
    *out = structural::rms(std::vector<double>(a, a + n));
  });
}

/* Uncertainty quantification */

flume_status flume_inverse_cdf(const flume_random_variable* rv, double u, double* x) {
  return guarded([&] {
    require(rv != nullptr && x != nullptr, "null argument");
    *x = uq::inverse_cdf(to_spec(*rv), u);
  });
}

flume_status flume_lhs_sample(const flume_random_variable* rvs, size_t n, size_t q, uint64_t seed,
                              double* values) {
  return guarded([&] {
    require(values != nullptr && (n == 0 || rvs != nullptr), "null argument");
    std::vector<uq::RandomVariableSpec> specs;
    for (size_t i = 0; i < n; ++i) specs.push_back(to_spec(rvs[i]));
    const auto m = uq::lhs_sample(specs, q, seed);
    for (size_t r = 0; r < q; ++r) {
      for (size_t c = 0; c < n; ++c) values[r * n + c] = m.values[r][c];
    }
  });
}

flume_status flume_silverman_bandwidth(const double* samples, size_t n, double* h) {
  return guarded([&] {
    require(h != nullptr && (n == 0 || samples != nullptr), "null argument");
    *h = uq::silverman_bandwidth(std::vector<double>(samples, samples + n));
  });
}

flume_status flume_kde_evaluate(const double* samples, size_t n, double bandwidth, const double* x, size_t nx,
                                double* density) {
  return guarded([&] {
    require(samples != nullptr && n > 0, "empty sample");
    require(nx == 0 || (x != nullptr && density != nullptr), "null argument");
    const std::vector<double> s(samples, samples + n);
    const double h = bandwidth > 0.0 ? bandwidth : uq::silverman_bandwidth(s);
    for (size_t i = 0; i < nx; ++i) density[i] = uq::kde_density(s, h, x[i]);
  });
}

flume_status flume_boxplot_stats(const double* samples, size_t n, flume_boxplot* out) {
  return guarded([&] {
    require(out != nullptr && (n == 0 || samples != nullptr), "null argument");
    const auto b = uq::boxplot_stats(std::vector<double>(samples, samples + n));
    *out = flume_boxplot{b.q1,          b.median,      b.q3,           b.iqr,
                         b.lower_fence, b.upper_fence, b.whisker_low, b.whisker_high,
                         b.outliers.size()};
  });
}

}  // extern "C"
