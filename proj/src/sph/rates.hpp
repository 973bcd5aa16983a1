#pragma once

#include <vector>

#include "sph/fluid.hpp"
#include "sph/kernel.hpp"
#include "sph/particle.hpp"

namespace flume::sph {

/// Per-particle time derivatives plus the extrema needed by the time-step bound.
struct Rates {
  std::vector<double> drho;  ///< continuity rate incl. density diffusion [kg/m^3/s]
  std::vector<Vec2> accel;   ///< momentum rate incl. gravity [m/s^2]; zero for walls
  double max_accel = 0.0;    ///< over active fluid particles
  double max_speed = 0.0;    ///< over active fluid and piston particles
};

/// Recompute every particle's pressure from its density.
void update_pressures(SimState& state, const FluidConstants& consts);

/// Rebuild the cell list for the current positions.
void refresh_grid(SimState& state, const KernelConfig& kernel);

/// Continuity and momentum rates for every particle. Requires a current grid and
/// pressures. Walls accumulate continuity only from fluid neighbours; density
/// diffusion acts on fluid-fluid pairs. Throws NonFiniteRate on NaN/Inf output.
Rates compute_rates(const SimState& state, const KernelConfig& kernel, const FluidConstants& consts);

/// Same as compute_rates, reusing the storage of `out`.
void compute_rates(const SimState& state, const KernelConfig& kernel, const FluidConstants& consts,
                   Rates& out);

/// Continuity rate only; fills out.drho and out.max_speed.
void compute_continuity(const SimState& state, const KernelConfig& kernel, const FluidConstants& consts,
                        Rates& out);

/// Momentum rate only; fills out.accel and out.max_accel.
void compute_momentum(const SimState& state, const KernelConfig& kernel, const FluidConstants& consts,
                      Rates& out);

}  // namespace flume::sph
