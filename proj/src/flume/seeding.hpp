#pragma once

#include <cstdint>
#include <vector>

#include "flume/scenario.hpp"
#include "sph/fluid.hpp"
#include "sph/kernel.hpp"
#include "sph/particle.hpp"
#include "sph/solver.hpp"

namespace flume::setup {

/// Seeded particle set plus the bookkeeping the force extraction needs.
struct SeededFlume {
  sph::SimState state;
  std::vector<std::uint32_t> structure_indices;
  StructureBox structure;
  bool has_structure = false;
  sph::DomainBox domain;
  double dp = 0.0;

  std::size_t fluid_count() const noexcept { return state.count(sph::ParticleKind::Fluid); }
};

sph::KernelConfig kernel_for(const FlumeScenario& scn);
/// c0 = 10 sqrt(g d) with d the still-water depth (the wave height for a dry flume).
sph::FluidConstants fluid_for(const FlumeScenario& scn);

/// Lattice-seeded flume: fluid below still water and above the bed, wall
/// layers along bed, slope, terrace and downstream wall, a filled structure
/// block and a paddle column behind x = 0. Initial densities are hydrostatic.
SeededFlume seed_particles(const FlumeScenario& scn);

/// Simulation with the Rayleigh paddle attached (none for a dry flume).
sph::Simulation make_simulation(const FlumeScenario& scn, SeededFlume seeded);

/// Closed rectangular tank (walls left, right, bottom) used for hydrostatic
/// checks. The right wall is reported as the structure so its load can be
/// extracted; its box spans the wall's inner face.
SeededFlume seed_tank(double length, double depth, double wall_height, double dp, int wall_layers,
                      const sph::FluidConstants& fluid);

}  // namespace flume::setup
