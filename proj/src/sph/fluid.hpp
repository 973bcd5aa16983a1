#pragma once

#include "core/vec2.hpp"

namespace flume::sph {

/// Weakly-compressible closure constants.
struct FluidConstants {
  double rho0 = 1000.0;      ///< reference density [kg/m^3]
  double c0 = 27.1247;       ///< numerical speed of sound [m/s]
  double gamma = 7.0;        ///< polytropic index
  double alpha_visc = 0.01;  ///< Monaghan artificial viscosity coefficient
  double delta_diff = 0.1;   ///< density diffusion coefficient
  double g = 9.81;           ///< gravity magnitude [m/s^2], acting along -z

  /// c0 = 10 sqrt(g * depth_at_rest)
  static FluidConstants for_depth(double depth_at_rest, double g = 9.81);

  /// Tait stiffness B = c0^2 rho0 / gamma.
  double stiffness() const noexcept { return c0 * c0 * rho0 / gamma; }
};

/// Barotropic equation of state P(rho).
double eos_pressure(double rho, const FluidConstants& consts) noexcept;

/// Inverse of eos_pressure.
double eos_density(double pressure, const FluidConstants& consts) noexcept;

/// Local sound speed c(rho) = c0 (rho/rho0)^((gamma-1)/2).
double sound_speed(double rho, const FluidConstants& consts) noexcept;

/// Monaghan artificial viscosity Pi_ab. Active only for approaching pairs (u_ab . r_ab < 0).
double artificial_viscosity(Vec2 u_ab, Vec2 r_ab, double rho_mean, double c_mean, double h,
                            const FluidConstants& consts) noexcept;

}  // namespace flume::sph
