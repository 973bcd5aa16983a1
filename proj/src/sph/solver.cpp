#include "sph/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace flume::sph {

Simulation::Simulation(SimState state, KernelConfig kernel, FluidConstants fluid, SolverConfig solver,
                       std::optional<RayleighPiston> piston)
    : state_(std::move(state)),
      kernel_(kernel),
      fluid_(fluid),
      solver_(solver),
      piston_(std::move(piston)) {
  apply_piston(state_.time);
  refresh_grid(state_, kernel_);
  compute_continuity(state_, kernel_, fluid_, rates_);
  refresh_acceleration();
  update_max_speed();
}

double Simulation::stable_timestep() const noexcept {
  const double h = kernel_.h;
  double dt = h / (fluid_.c0 + rates_.max_speed);
  if (rates_.max_accel > 0.0) {
    dt = std::min(dt, std::sqrt(h / rates_.max_accel));
  }
  return solver_.cfl * dt;
}

void Simulation::apply_piston(double t) {
  if (!piston_) return;
  const double offset = piston_->displacement(t);
  const double velocity = piston_->velocity(t);
  const double shift = offset - state_.piston_offset;
  for (auto& p : state_.particles) {
    if (p.kind != ParticleKind::WallPiston) continue;
    p.position.x += shift;
    p.velocity = Vec2{velocity, 0.0};
  }
  state_.piston_offset = offset;
}

void Simulation::refresh_acceleration() {
  update_pressures(state_, fluid_);
  compute_momentum(state_, kernel_, fluid_, rates_);
}

void Simulation::update_max_speed() {
  double vmax = 0.0;
  for (const auto& p : state_.particles) {
    if (p.active && p.kind != ParticleKind::WallFixed) vmax = std::max(vmax, norm(p.velocity));
  }
  rates_.max_speed = vmax;
}

void Simulation::check_density(std::size_t i) const {
  const double rho = state_.particles[i].density;
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    fail(ErrorCode::NonPositiveDensity, "density " + std::to_string(rho) + " at particle " + std::to_string(i) +
                                            ", t=" + std::to_string(state_.time));
  }
}

void Simulation::step(double dt) {
  if (!(dt > 0.0)) {
    fail(ErrorCode::InvalidArgument, "time step must be positive");
  }
  const double limit = stable_timestep();
  if (dt > limit * (1.0 + 1e-12)) {
    fail(ErrorCode::CflViolation,
         "requested dt " + std::to_string(dt) + " exceeds stable step " + std::to_string(limit));
  }
  const double half = 0.5 * dt;
  auto& ps = state_.particles;

  for (std::size_t i = 0; i < ps.size(); ++i) {
    Particle& p = ps[i];
    if (!p.active || !p.is_fluid()) continue;
    p.velocity += half * rates_.accel[i];
    p.position += dt * p.velocity;
    if (!solver_.domain.contains(p.position)) {
      p.active = false;
      p.velocity = Vec2{};
    }
  }
  const double t0 = state_.time;
  apply_piston(t0 + dt);
  if (piston_) {
    // The continuity pass pairs half-step fluid velocities with the paddle
    // velocity at the same instant.
    const double v_mid = piston_->velocity(t0 + half);
    for (auto& p : ps) {
      if (p.kind == ParticleKind::WallPiston) p.velocity = Vec2{v_mid, 0.0};
    }
  }
  state_.time = t0 + dt;
  ++state_.step_count;

  refresh_grid(state_, kernel_);
  compute_continuity(state_, kernel_, fluid_, rates_);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Particle& p = ps[i];
    if (!p.active) continue;
    p.density += dt * rates_.drho[i];
    if (!p.is_fluid() && solver_.wall_density_floor && p.density < fluid_.rho0) p.density = fluid_.rho0;
    check_density(i);
    if (p.is_fluid() && (p.density < solver_.density_out_min || p.density > solver_.density_out_max)) {
      p.active = false;
      p.velocity = Vec2{};
    }
  }
  if (piston_) {
    const double v_end = piston_->velocity(state_.time);
    for (auto& p : ps) {
      if (p.kind == ParticleKind::WallPiston) p.velocity = Vec2{v_end, 0.0};
    }
  }

  refresh_acceleration();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Particle& p = ps[i];
    if (p.active && p.is_fluid()) p.velocity += half * rates_.accel[i];
  }
  update_max_speed();
}

void Simulation::advance_to(double t_end, const std::function<void(const Simulation&)>& observer) {
  while (state_.time < t_end - 1e-12) {
    const double dt = std::min(stable_timestep(), t_end - state_.time);
    step(dt);
    if (observer) observer(*this);
  }
}

void Simulation::zero_fluid_velocities() {
  for (auto& p : state_.particles) {
    if (p.is_fluid()) p.velocity = Vec2{};
  }
  refresh_acceleration();
  update_max_speed();
}

}  // namespace flume::sph
