#pragma once

#include <vector>

namespace flume::sph {

/// Piston wavemaker for a Rayleigh solitary wave. The free-surface profile at
/// the paddle, eta(x_s, t) = H sech^2[k (c (t - T_f/2) + S/2 - x_s)], drives the
/// paddle through dx_s/dt = c eta / (depth + eta). The trajectory is integrated
/// once with fixed-step RK4 and then served by cubic Hermite interpolation.
class RayleighPiston {
 public:
  struct Params {
    double wave_height = 0.4;  ///< H [m]
    double depth = 0.75;       ///< still-water depth at the paddle [m]
    double g = 9.81;
    double ramp = 0.0;  ///< generation time T_f [s]; <= 0 selects the default
  };

  explicit RayleighPiston(const Params& params);

  static double celerity(double wave_height, double depth, double g = 9.81);
  static double outskirt_coefficient(double wave_height, double depth);
  /// Full paddle stroke, twice the half-stroke 2 sqrt(H (H + depth) / 3).
  static double stroke(double wave_height, double depth);
  /// Solitary wavelength 2 pi / k.
  static double wavelength(double wave_height, double depth);

  double celerity() const noexcept { return celerity_; }
  double k() const noexcept { return k_; }
  double stroke() const noexcept { return 2.0 * half_stroke_; }
  double ramp() const noexcept { return ramp_; }
  const Params& params() const noexcept { return params_; }

  /// Surface elevation at the paddle that the motion reproduces.
  double surface_profile(double x_s, double t) const noexcept;
  /// Right-hand side of the paddle ODE.
  double paddle_rate(double x_s, double t) const noexcept;

  double displacement(double t) const noexcept;
  double velocity(double t) const noexcept;

  /// End of the tabulated motion; the paddle is at rest afterwards.
  double motion_end() const noexcept { return t_end_; }

 private:
  Params params_;
  double celerity_ = 0.0;
  double k_ = 0.0;
  double half_stroke_ = 0.0;
  double ramp_ = 0.0;
  double table_dt_ = 0.0;
  double t_end_ = 0.0;
  std::vector<double> x_;
  std::vector<double> v_;
};

}  // namespace flume::sph
