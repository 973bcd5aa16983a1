#include "sph/fluid.hpp"

#include <cmath>

namespace flume::sph {

FluidConstants FluidConstants::for_depth(double depth_at_rest, double g) {
  FluidConstants c;
  c.g = g;
  c.c0 = 10.0 * std::sqrt(g * depth_at_rest);
  return c;
}

double eos_pressure(double rho, const FluidConstants& consts) noexcept {
  return consts.stiffness() * (std::pow(rho / consts.rho0, consts.gamma) - 1.0);
}

double eos_density(double pressure, const FluidConstants& consts) noexcept {
  return consts.rho0 * std::pow(1.0 + pressure / consts.stiffness(), 1.0 / consts.gamma);
}

double sound_speed(double rho, const FluidConstants& consts) noexcept {
  return consts.c0 * std::pow(rho / consts.rho0, 0.5 * (consts.gamma - 1.0));
}

double artificial_viscosity(Vec2 u_ab, Vec2 r_ab, double rho_mean, double c_mean, double h,
                            const FluidConstants& consts) noexcept {
  const double ur = dot(u_ab, r_ab);
  if (ur >= 0.0) {
    return 0.0;
  }
  const double mu = h * ur / (norm2(r_ab) + 0.01 * h * h);
  return -consts.alpha_visc * c_mean * mu / rho_mean;
}

}  // namespace flume::sph
