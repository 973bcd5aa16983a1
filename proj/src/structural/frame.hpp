#pragma once

#include <vector>

namespace flume::structural {

/// Random structural inputs. Weights are per unit member length.
struct StructuralParams {
  double yield_strength = 413.685e6;   ///< [Pa]
  double col_weight_per_len = 173.4;   ///< [N/m]
  double beam_weight_per_len = 133.554;
  double girder_weight_per_len = 133.554;
  double youngs_modulus = 200e9;       ///< [Pa]
};

/// Mapping from member properties to the shear-frame surrogate. None of these
/// constants describe a specific physical frame; they are calibrated so the
/// mean parameters give a plausible small two-storey steel frame.
struct FrameGeometry {
  int n_stories = 2;
  double story_height = 0.25;     ///< [m]
  double bay_x = 0.4;             ///< beam length [m]
  double bay_y = 0.4;             ///< girder length [m]
  int n_columns = 4;
  int beams_per_story = 2;
  int girders_per_story = 2;
  double dead_load_mass = 0.0;    ///< extra mass per story [kg]
  /// Column second moment I_c = c_i * w_col^2 [m^4 per (N/m)^2].
  double c_i = 2.5e-15;
  /// Story yield shear V_y = fy * z_cfg * (w_col / reference_weight).
  double z_cfg = 3.6e-6;          ///< [m^3]
  double reference_weight = 173.4;
  double post_yield_ratio = 0.02;
  double damping_ratio = 0.02;
  double g = 9.81;
};

struct ShearFrameModel {
  std::vector<double> story_masses;
  std::vector<double> story_stiffness;
  std::vector<double> story_yield_shear;
  double post_yield_ratio = 0.02;
  double damping_ratio = 0.02;
  double story_height = 0.25;

  int n_stories() const noexcept { return static_cast<int>(story_masses.size()); }
  /// Validates the invariants and throws InvalidParams.
  void validate() const;
};

ShearFrameModel build_frame(const StructuralParams& p, const FrameGeometry& geom = {});

/// Elastic natural circular frequencies, ascending [rad/s].
std::vector<double> natural_frequencies(const ShearFrameModel& model);
double fundamental_period(const ShearFrameModel& model);

struct EdpResult {
  std::vector<double> rmsa;               ///< per story [m/s^2]
  std::vector<double> peak_displacement;  ///< per story [m]
  double rmsa_envelope = 0.0;
  double peak_displacement_envelope = 0.0;
  /// Samples x stories, row-major, sample k at time k*dt.
  std::vector<std::vector<double>> displacement_history;
  std::vector<std::vector<double>> acceleration_history;
  bool yielded = false;
};

struct EnergyTrace {
  std::vector<double> input;        ///< cumulative external work
  std::vector<double> kinetic;
  std::vector<double> recoverable;  ///< elastic strain energy
  std::vector<double> damping;      ///< cumulative viscous dissipation
  std::vector<double> hysteretic;   ///< cumulative plastic dissipation
};

struct ResponseOptions {
  std::vector<double> initial_displacement;  ///< per story, empty = rest
  std::vector<double> initial_velocity;
  int max_iterations = 50;
  double tolerance = 1e-10;
  /// Skip the dt <= T1/20 check (used for convergence studies).
  bool allow_coarse_dt = false;
  EnergyTrace* energy = nullptr;
};

/// Average-acceleration Newmark with Newton iteration on bilinear kinematic
/// hardening story springs and Rayleigh damping fitted at modes 1 and 2.
/// load[s] is the history of the force applied at floor s, all sampled at dt.
EdpResult newmark_response(const ShearFrameModel& model, const std::vector<std::vector<double>>& load, double dt,
                           const ResponseOptions& opts = {});

/// Peak |u| and RMS acceleration per story from time x story histories.
EdpResult extract_edp(const std::vector<std::vector<double>>& displacement,
                      const std::vector<std::vector<double>>& acceleration);

/// sqrt(mean(a^2)).
double rms(const std::vector<double>& a);

}  // namespace flume::structural
