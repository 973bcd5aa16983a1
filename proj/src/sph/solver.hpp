#pragma once

#include <functional>
#include <optional>

#include "sph/fluid.hpp"
#include "sph/kernel.hpp"
#include "sph/particle.hpp"
#include "sph/rates.hpp"
#include "sph/wavemaker.hpp"

namespace flume::sph {

struct SolverConfig {
  double cfl = 0.2;
  /// Keep wall densities at or above rho0 so walls never pull fluid in.
  bool wall_density_floor = true;
  /// Fluid particles leaving this box are deactivated.
  DomainBox domain;
  /// Fluid particles whose density leaves [min, max] are deactivated too;
  /// they are stranded splash or wall-trapped particles, not bulk fluid.
  double density_out_min = 700.0;
  double density_out_max = 1300.0;
};

/// Owns one SimState and advances it with a kick-drift-kick Verlet scheme in
/// which density is treated like position:
///   u^{n+1/2} = u^n + dt/2 a^n
///   r^{n+1}   = r^n + dt u^{n+1/2}  (= r^n + dt u^n + dt^2/2 a^n)
///   rho^{n+1} = rho^n + dt D(r^{n+1}, u^{n+1/2}, rho^n)
///   u^{n+1}   = u^{n+1/2} + dt/2 a(r^{n+1}, rho^{n+1}, u^{n+1/2})
/// The acceleration from the end of one step is reused at the start of the next.
class Simulation {
 public:
  Simulation(SimState state, KernelConfig kernel, FluidConstants fluid, SolverConfig solver = {},
             std::optional<RayleighPiston> piston = std::nullopt);

  const SimState& state() const noexcept { return state_; }
  const Rates& rates() const noexcept { return rates_; }
  const KernelConfig& kernel() const noexcept { return kernel_; }
  const FluidConstants& fluid() const noexcept { return fluid_; }
  const SolverConfig& solver() const noexcept { return solver_; }
  const std::optional<RayleighPiston>& piston() const noexcept { return piston_; }

  /// CFL * min(h / (c0 + |u|max), sqrt(h / |a|max)) from the current rates.
  double stable_timestep() const noexcept;

  /// One Verlet step. Throws CflViolation if dt exceeds stable_timestep().
  void step(double dt);

  /// Step with the stable dt until time >= t_end. The observer, when given, is
  /// called after every step.
  void advance_to(double t_end, const std::function<void(const Simulation&)>& observer = {});

  /// Replace velocities of active fluid particles with zero (relaxation helper).
  void zero_fluid_velocities();

 private:
  void apply_piston(double t);
  void refresh_acceleration();
  void update_max_speed();
  void check_density(std::size_t i) const;

  SimState state_;
  KernelConfig kernel_;
  FluidConstants fluid_;
  SolverConfig solver_;
  std::optional<RayleighPiston> piston_;
  Rates rates_;
};

}  // namespace flume::sph
