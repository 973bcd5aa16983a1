/*
 * flume: 2-D weakly compressible SPH wave flume, wave-load estimators,
 * shear-frame structural response and Latin hypercube uncertainty sweeps.
 *
 * Every function returns a flume_status. On failure a description of the
 * last error on the calling thread is available from flume_last_error().
 * Handles are opaque and must be released with the matching _destroy call.
 */
#ifndef FLUME_FLUME_H
#define FLUME_FLUME_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FLUME_API
#else
#define FLUME_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum flume_status {
  FLUME_OK = 0,
  FLUME_ERR_INVALID_ARGUMENT = 1,
  FLUME_ERR_INVALID_GEOMETRY = 2,
  FLUME_ERR_RESOLUTION_TOO_COARSE = 3,
  FLUME_ERR_CONFIG = 4,
  FLUME_ERR_IO = 5,
  FLUME_ERR_MISSING_INPUT = 6,
  FLUME_ERR_NON_FINITE_RATE = 7,
  FLUME_ERR_NON_POSITIVE_DENSITY = 8,
  FLUME_ERR_CFL_VIOLATION = 9,
  FLUME_ERR_COEFFICIENT_OUT_OF_RANGE = 10,
  FLUME_ERR_LENGTH_MISMATCH = 11,
  FLUME_ERR_NON_POSITIVE_DEPTH = 12,
  FLUME_ERR_INVALID_PARAMS = 13,
  FLUME_ERR_NON_CONVERGENCE = 14,
  FLUME_ERR_TIMESTEP_TOO_COARSE = 15,
  FLUME_ERR_EMPTY_HISTORY = 16,
  FLUME_ERR_INVALID_SPEC = 17,
  FLUME_ERR_DOMAIN = 18,
  FLUME_ERR_TOO_FEW_SAMPLES = 19,
  FLUME_ERR_PARTIAL_FAILURE = 20,
  FLUME_ERR_INTERNAL = 21,
  FLUME_ERR_BUFFER_TOO_SMALL = 22
} flume_status;

FLUME_API const char* flume_version(void);
/* Message for the most recent failure on this thread ("" if none). */
FLUME_API const char* flume_last_error(void);
FLUME_API const char* flume_status_name(flume_status status);
/* Process exit code for a status: 0 ok, 2 configuration/input problems,
 * 3 solver or numerical failures, 4 partial UQ failure. */
FLUME_API int flume_exit_code(flume_status status);

/* ------------------------------------------------------------------ */
/* Scenario                                                            */

typedef struct flume_scenario flume_scenario;

/* Default flume: 14.05 m flat bed, 1:10 slope, terrace, 0.4 m structure. */
FLUME_API flume_status flume_scenario_create(flume_scenario** out);
/* INI file with [flume] [structure] [wave] [numerics] [run] [gauges] sections. */
FLUME_API flume_status flume_scenario_load(const char* path, flume_scenario** out);
/* Flat-bed flume without beach or structure. */
FLUME_API flume_status flume_scenario_create_flat(double length, double depth, double wave_height, double dp,
                                                  flume_scenario** out);
FLUME_API void flume_scenario_destroy(flume_scenario* scn);
/* Set "section.key" and re-validate; on failure the scenario is unchanged. */
FLUME_API flume_status flume_scenario_set(flume_scenario* scn, const char* key, const char* value);
/* Several keys at once, applied atomically. */
FLUME_API flume_status flume_scenario_set_many(flume_scenario* scn, const char* const* keys,
                                               const char* const* values, size_t n);
FLUME_API flume_status flume_scenario_get(const flume_scenario* scn, const char* key, char* buf, size_t len);
FLUME_API flume_status flume_scenario_get_double(const flume_scenario* scn, const char* key, double* out);
FLUME_API flume_status flume_scenario_save(const flume_scenario* scn, const char* path);
/* Hex SHA-256 of the resolved configuration (65 bytes with terminator). */
FLUME_API flume_status flume_scenario_hash(const flume_scenario* scn, char* buf, size_t len);

/* ------------------------------------------------------------------ */
/* Simulation                                                          */

typedef struct flume_sim flume_sim;

FLUME_API flume_status flume_sim_create(const flume_scenario* scn, flume_sim** out);
/* Closed tank, used for hydrostatic checks. The right wall is the load face. */
FLUME_API flume_status flume_sim_create_tank(double length, double depth, double wall_height, double dp,
                                             int wall_layers, flume_sim** out);
FLUME_API void flume_sim_destroy(flume_sim* sim);
FLUME_API flume_status flume_sim_step(flume_sim* sim, double dt);
FLUME_API flume_status flume_sim_advance(flume_sim* sim, double t_end);
FLUME_API flume_status flume_sim_stable_dt(const flume_sim* sim, double* dt);
FLUME_API flume_status flume_sim_time(const flume_sim* sim, double* t);
FLUME_API flume_status flume_sim_particle_count(const flume_sim* sim, size_t* total, size_t* fluid);
/* Zero all fluid velocities (relaxation helper). */
FLUME_API flume_status flume_sim_zero_velocity(flume_sim* sim);
/* Total fluid momentum per unit width [kg m/s]. */
FLUME_API flume_status flume_sim_momentum(const flume_sim* sim, double* px, double* pz);
/* Free-surface elevation above still water at x (-depth when dry). */
FLUME_API flume_status flume_sim_gauge(const flume_sim* sim, double x, double* eta);
/* Mean pressure of fluid particles within a box. */
FLUME_API flume_status flume_sim_mean_pressure(const flume_sim* sim, double x0, double x1, double z0, double z1,
                                               double* p);
FLUME_API flume_status flume_sim_structure_force(const flume_sim* sim, double* fx);
FLUME_API flume_status flume_sim_effective_velocity(const flume_sim* sim, double* veff);
FLUME_API flume_status flume_sim_write_snapshot(const flume_sim* sim, const char* path);

/* ------------------------------------------------------------------ */
/* Pipeline stages                                                     */

typedef void (*flume_progress_fn)(const char* message, void* user);

typedef struct flume_simulate_options {
  const char* out_dir;     /* run directory (ignored when library_dir set) */
  const char* library_dir; /* cache root; NULL to disable caching */
  flume_progress_fn progress;
  void* user;
} flume_simulate_options;

typedef struct flume_simulate_result {
  int cached;
  size_t particles;
  size_t fluid_particles;
  int64_t steps;
  double seconds;
  double peak_sph_force;
  char run_dir[1024];
} flume_simulate_result;

FLUME_API flume_status flume_run_simulate(const flume_scenario* scn, const flume_simulate_options* opts,
                                          flume_simulate_result* result);

typedef struct flume_forces_options {
  const char* const* run_dirs;
  size_t n_run_dirs;
  const char* out_dir;
  int sph;
  int asce;
  int semi_empirical;
  double cp;
  int use_asce_ds; /* constant envelope at asce_ds instead of the inundation history */
  double asce_ds;
  double cd;
  double area;
  double width;
  double base_offset;
  double f0;
} flume_forces_options;

typedef struct flume_forces_summary {
  double wave_height;
  double peak_sph;
  double peak_asce;
  double peak_semi_empirical;
  double max_veff;
  double max_froude;
} flume_forces_summary;

FLUME_API void flume_forces_options_init(flume_forces_options* opts);
/* rows may be NULL; *n_rows receives the number of runs processed. */
FLUME_API flume_status flume_run_forces(const flume_forces_options* opts, flume_forces_summary* rows,
                                        size_t capacity, size_t* n_rows);

typedef struct flume_uq_options {
  const char* spec_file; /* NULL: default structural distributions */
  const char* library_dir;
  const char* out_dir;
  size_t q;
  uint64_t seed;
  unsigned jobs;
  int distribution_study;
  const double* heights; /* optional subset */
  size_t n_heights;
  int use_bandwidth;
  double bandwidth;
  double failure_threshold;
  flume_progress_fn progress;
  void* user;
} flume_uq_options;

typedef struct flume_uq_result {
  size_t rows;
  size_t failures;
  int partial_failure;
  size_t n_heights;
} flume_uq_result;

FLUME_API void flume_uq_options_init(flume_uq_options* opts);
/* Returns FLUME_ERR_PARTIAL_FAILURE (outputs still written) when more rows
 * than the threshold fraction failed. */
FLUME_API flume_status flume_run_uq(const flume_uq_options* opts, flume_uq_result* result);

FLUME_API flume_status flume_run_report(const char* run_dir, const char* out_dir, size_t* n_files);

/* ------------------------------------------------------------------ */
/* Formulas                                                            */

FLUME_API flume_status flume_kernel_w(double r, double h, double* w);
FLUME_API flume_status flume_kernel_dwdr(double r, double h, double* dwdr);
FLUME_API flume_status flume_eos_pressure(double rho, double rho0, double c0, double gamma, double* p);
FLUME_API flume_status flume_solitary_wave(double wave_height, double depth, double g, double* wavelength,
                                           double* celerity);

FLUME_API flume_status flume_asce_pressure(double cp, double gamma_w, double ds, double* p);
FLUME_API flume_status flume_asce_force_per_length(double cp, double gamma_w, double ds, double* f);

typedef struct flume_semi_empirical_params {
  double cd;
  double width;
  double area;
  double base_offset;
  double rho;
  double g;
} flume_semi_empirical_params;

FLUME_API void flume_semi_empirical_params_init(flume_semi_empirical_params* p);
FLUME_API flume_status flume_semi_empirical_force(const double* hb, const double* veff, size_t n,
                                                  const flume_semi_empirical_params* p, double* force);

typedef enum flume_flow_regime {
  FLUME_SUBCRITICAL = 0,
  FLUME_CRITICAL = 1,
  FLUME_SUPERCRITICAL = 2
} flume_flow_regime;

FLUME_API flume_status flume_froude_number(double veff, double depth, double g, double* fr,
                                           flume_flow_regime* regime);

/* ------------------------------------------------------------------ */
/* Structural response                                                 */

typedef struct flume_structural_params {
  double yield_strength;
  double col_weight_per_len;
  double beam_weight_per_len;
  double girder_weight_per_len;
  double youngs_modulus;
} flume_structural_params;

typedef struct flume_edp {
  double rmsa;
  double peak_displacement;
  int yielded;
} flume_edp;

typedef struct flume_frame flume_frame;

FLUME_API void flume_structural_params_init(flume_structural_params* p);
/* Two-storey shear frame with the default geometry mapping. */
FLUME_API flume_status flume_frame_build(const flume_structural_params* p, flume_frame** out);
FLUME_API flume_status flume_frame_build_custom(size_t n_stories, const double* masses, const double* stiffness,
                                                const double* yield_shear, double post_yield_ratio,
                                                double damping_ratio, double story_height, flume_frame** out);
FLUME_API void flume_frame_destroy(flume_frame* frame);
FLUME_API flume_status flume_frame_stories(const flume_frame* frame, size_t* n);
FLUME_API flume_status flume_frame_period(const flume_frame* frame, double* t1);
/* load: steps x stories, row-major. u0 may be NULL. disp/acc may be NULL,
 * otherwise steps x stories outputs. */
FLUME_API flume_status flume_frame_response(const flume_frame* frame, const double* load, size_t steps, double dt,
                                            const double* u0, double* disp, double* acc, flume_edp* edp);
FLUME_API flume_status flume_rms(const double* a, size_t n, double* out);

/* ------------------------------------------------------------------ */
/* Uncertainty quantification                                          */

typedef enum flume_distribution {
  FLUME_DIST_CONSTANT = 0,
  FLUME_DIST_NORMAL = 1,
  FLUME_DIST_LOGNORMAL = 2,
  FLUME_DIST_UNIFORM = 3,
  FLUME_DIST_BETA = 4
} flume_distribution;

typedef struct flume_random_variable {
  const char* name;
  flume_distribution distribution;
  double value;
  double mean;
  double sd;
  double min;
  double max;
  double alpha;
  double beta;
  int has_floor;
  double floor;
} flume_random_variable;

FLUME_API flume_status flume_inverse_cdf(const flume_random_variable* rv, double u, double* x);
/* values: q x n row-major. */
FLUME_API flume_status flume_lhs_sample(const flume_random_variable* rvs, size_t n, size_t q, uint64_t seed,
                                        double* values);
FLUME_API flume_status flume_silverman_bandwidth(const double* samples, size_t n, double* h);
/* Gaussian KDE evaluated at x[0..nx). bandwidth <= 0 selects Silverman. */
FLUME_API flume_status flume_kde_evaluate(const double* samples, size_t n, double bandwidth, const double* x,
                                          size_t nx, double* density);

typedef struct flume_boxplot {
  double q1;
  double median;
  double q3;
  double iqr;
  double lower_fence;
  double upper_fence;
  double whisker_low;
  double whisker_high;
  size_t n_outliers;
} flume_boxplot;

FLUME_API flume_status flume_boxplot_stats(const double* samples, size_t n, flume_boxplot* out);

#ifdef __cplusplus
}
#endif

#endif /* FLUME_FLUME_H */
