#include <cmath>

#include "core/error.hpp"
#include "doctest.h"
#include "flume/seeding.hpp"
#include "sph/rates.hpp"
#include "sph/solver.hpp"

using namespace flume;
using namespace flume::sph;

namespace {

Particle fluid_particle(Vec2 r, Vec2 u, double dp = 0.05) {
  Particle p;
  p.position = r;
  p.velocity = u;
  p.density = 1000.0;
  p.mass = 1000.0 * dp * dp;
  return p;
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("isolated particle follows the ballistic parabola") {
    SimState st;
    const Vec2 r0{0.2, 1.0};
    const Vec2 u0{1.5, 2.0};
    st.particles.push_back(fluid_particle(r0, u0));
    const auto fluid = FluidConstants::for_depth(0.75);
    Simulation sim(std::move(st), KernelConfig::from_spacing(0.05), fluid);
    const double dt = 0.5 * sim.stable_timestep();
    const int n = 400;
    for (int i = 0; i < n; ++i) sim.step(dt);
    const double t = n * dt;
    const auto& p = sim.state().particles[0];
    CHECK(sim.state().time == doctest::Approx(t).epsilon(1e-14));
    CHECK(p.position.x == doctest::Approx(r0.x + u0.x * t).epsilon(1e-12));
    CHECK(p.position.z == doctest::Approx(r0.z + u0.z * t - 0.5 * fluid.g * t * t).epsilon(1e-12));
    CHECK(p.velocity.z == doctest::Approx(u0.z - fluid.g * t).epsilon(1e-12));
    CHECK(p.density == 1000.0);
  }

  TEST_CASE("time step guards") {
    SimState st;
    st.particles.push_back(fluid_particle({0.0, 0.0}, {0.0, 0.0}));
    Simulation sim(std::move(st), KernelConfig::from_spacing(0.05), FluidConstants::for_depth(0.75));
    const double limit = sim.stable_timestep();
    CHECK(limit > 0.0);
    // bound is CFL * min(h / (c0 + |u|), sqrt(h / |a|))
    const double h = 0.1;
    const double c0 = 10.0 * std::sqrt(9.81 * 0.75);
    CHECK(limit == doctest::Approx(0.2 * std::min(h / c0, std::sqrt(h / 9.81))));
    try {
      sim.step(2.0 * limit);
      FAIL("expected CflViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CflViolation);
    }
    try {
      sim.step(0.0);
      FAIL("expected InvalidArgument");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidArgument);
    }
  }

  TEST_CASE("particles leaving the domain are deactivated") {
    SimState st;
    st.particles.push_back(fluid_particle({0.0, 0.0}, {0.0, 0.0}));
    SolverConfig sc;
    sc.domain.lo = {-1.0, -0.01};
    sc.domain.hi = {1.0, 1.0};
    Simulation sim(std::move(st), KernelConfig::from_spacing(0.05), FluidConstants::for_depth(0.75), sc);
    sim.advance_to(0.2);
    CHECK_FALSE(sim.state().particles[0].active);
  }

  TEST_CASE("pair interaction conserves momentum without gravity") {
    SimState st;
    st.particles.push_back(fluid_particle({0.0, 0.0}, {0.4, 0.1}));
    st.particles.push_back(fluid_particle({0.06, 0.01}, {-0.3, 0.0}));
    st.particles.push_back(fluid_particle({0.03, 0.05}, {0.0, -0.2}));
    auto fluid = FluidConstants::for_depth(0.75);
    fluid.g = 0.0;
    double px0 = 0.0;
    double pz0 = 0.0;
    for (const auto& p : st.particles) {
      px0 += p.mass * p.velocity.x;
      pz0 += p.mass * p.velocity.z;
    }
    Simulation sim(std::move(st), KernelConfig::from_spacing(0.05), fluid);
    sim.advance_to(0.05);
    double px = 0.0;
    double pz = 0.0;
    for (const auto& p : sim.state().particles) {
      px += p.mass * p.velocity.x;
      pz += p.mass * p.velocity.z;
    }
    CHECK(px == doctest::Approx(px0).epsilon(1e-12).scale(1.0));
    CHECK(pz == doctest::Approx(pz0).epsilon(1e-12).scale(1.0));
  }

  TEST_CASE("resting uniform lattice has zero continuity rate in the interior") {
    const double dp = 0.05;
    SimState st;
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) st.particles.push_back(fluid_particle({i * dp, j * dp}, {0.0, 0.0}, dp));
    }
    auto fluid = FluidConstants::for_depth(0.75);
    const auto kernel = KernelConfig::from_spacing(dp);
    refresh_grid(st, kernel);
    update_pressures(st, fluid);
    const Rates r = compute_rates(st, kernel, fluid);
    // particles a full support away from the lattice edge see a complete stencil
    for (int i = 4; i < 16; ++i) {
      for (int j = 4; j < 16; ++j) CHECK(std::abs(r.drho[static_cast<std::size_t>(i * 20 + j)]) < 1e-9);
    }
  }

  TEST_CASE("hydrostatic tank settles to rho0 g d") {
    const double dp = 0.05;
    const double depth = 0.5;
    const auto fluid = FluidConstants::for_depth(depth);
    auto seeded = setup::seed_tank(0.6, depth, 0.6, dp, 3, fluid);
    SolverConfig sc;
    sc.domain = seeded.domain;
    Simulation sim(std::move(seeded.state), KernelConfig::from_spacing(dp), fluid, sc);
    sim.advance_to(1.5);
    double p = 0.0;
    int n = 0;
    double mass = 0.0;
    for (const auto& q : sim.state().particles) {
      if (!q.is_fluid()) continue;
      mass += q.mass;
      if (q.position.z < 0.6 * dp && q.position.x > 0.15 && q.position.x < 0.45) {
        // extrapolate from the particle centre to the bed
        p += q.pressure + fluid.rho0 * fluid.g * q.position.z;
        ++n;
      }
    }
    REQUIRE(n > 0);
    CHECK(std::abs(p / n - fluid.rho0 * fluid.g * depth) < 0.05 * fluid.rho0 * fluid.g * depth);
    for (const auto& q : sim.state().particles) {
      if (q.is_wall()) CHECK(q.density >= fluid.rho0);
    }
    CHECK(mass > 0.0);
  }
}
