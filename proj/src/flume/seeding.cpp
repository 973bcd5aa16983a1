#include "flume/seeding.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace flume::setup {
namespace {

constexpr double kEps = 1e-9;

double lattice(long i, double dp) { return (static_cast<double>(i) + 0.5) * dp; }

/// First lattice index whose coordinate is >= x.
long first_index_at_or_after(double x, double dp) {
  return static_cast<long>(std::ceil(x / dp - 0.5 - kEps));
}

sph::Particle make_particle(Vec2 pos, sph::ParticleKind kind, double density, double mass) {
  sph::Particle p;
  p.position = pos;
  p.kind = kind;
  p.density = density;
  p.mass = mass;
  return p;
}

}  // namespace

sph::KernelConfig kernel_for(const FlumeScenario& scn) {
  return sph::KernelConfig::from_spacing(scn.dp, scn.h_over_dp);
}

sph::FluidConstants fluid_for(const FlumeScenario& scn) {
  const double depth = scn.still_water_depth > 0.0 ? scn.still_water_depth : scn.wave_height;
  sph::FluidConstants c = sph::FluidConstants::for_depth(depth, scn.g);
  c.rho0 = scn.rho0;
  c.alpha_visc = scn.alpha_visc;
  c.delta_diff = scn.delta_diff;
  return c;
}

SeededFlume seed_particles(const FlumeScenario& scn) {
  validate(scn);
  const double dp = scn.dp;
  const double d = scn.still_water_depth;
  const int layers = scn.wall_layers;
  const double x_end = scn.flume_end();
  const sph::FluidConstants fluid = fluid_for(scn);
  const double mass = fluid.rho0 * dp * dp;
  const double top = std::max(d + scn.piston_freeboard * scn.wave_height, scn.terrace_height + 0.5);

  auto hydrostatic = [&](double z) {
    return z < d ? sph::eos_density(fluid.rho0 * fluid.g * (d - z), fluid) : fluid.rho0;
  };
  auto wet_column = [&](double x) { return scn.bed_elevation(std::clamp(x, 0.0, x_end)) < d; };
  auto wall_density = [&](Vec2 p) { return wet_column(p.x) ? hydrostatic(p.z) : fluid.rho0; };

  SeededFlume out;
  out.dp = dp;
  out.has_structure = scn.has_structure;
  if (scn.has_structure) out.structure = scn.structure_box();
  const StructureBox& box = out.structure;
  auto in_structure = [&](Vec2 p) {
    return out.has_structure && p.x > box.x_min + kEps && p.x < box.x_max - kEps && p.z > box.z_min + kEps &&
           p.z < box.z_max - kEps;
  };

  auto& ps = out.state.particles;
  const long i_end = first_index_at_or_after(x_end, dp);  // first column of the end wall
  const long j_top = first_index_at_or_after(top, dp);

  // Fluid.
  for (long i = 0; i < i_end; ++i) {
    const double x = lattice(i, dp);
    const double zb = scn.bed_elevation(x);
    for (long j = first_index_at_or_after(zb, dp); lattice(j, dp) <= d - 0.5 * dp + kEps; ++j) {
      const Vec2 p{x, lattice(j, dp)};
      if (p.z <= zb + kEps || in_structure(p)) continue;
      ps.push_back(make_particle(p, sph::ParticleKind::Fluid, hydrostatic(p.z), mass));
    }
  }

  // Bed, slope and terrace layers, extended under the paddle and the end wall.
  for (long i = -layers - 1; i < i_end + layers; ++i) {
    const double x = lattice(i, dp);
    const double zb = scn.bed_elevation(x);
    const long j_hi = first_index_at_or_after(zb + kEps, dp) - 1;  // last index with z <= zb
    for (long j = j_hi; lattice(j, dp) > zb - layers * dp + kEps; --j) {
      const Vec2 p{x, lattice(j, dp)};
      ps.push_back(make_particle(p, sph::ParticleKind::WallFixed, wall_density(p), mass));
    }
  }

  // Downstream wall.
  const double zb_end = scn.bed_elevation(x_end);
  for (long i = i_end; i < i_end + layers; ++i) {
    const double x = lattice(i, dp);
    for (long j = first_index_at_or_after(zb_end + kEps, dp); j < j_top; ++j) {
      const Vec2 p{x, lattice(j, dp)};
      ps.push_back(make_particle(p, sph::ParticleKind::WallFixed, wall_density(p), mass));
    }
  }

  // Structure block.
  if (out.has_structure) {
    for (long i = first_index_at_or_after(box.x_min, dp); lattice(i, dp) < box.x_max - kEps; ++i) {
      for (long j = first_index_at_or_after(box.z_min + kEps, dp); lattice(j, dp) < box.z_max - kEps; ++j) {
        const Vec2 p{lattice(i, dp), lattice(j, dp)};
        out.structure_indices.push_back(static_cast<std::uint32_t>(ps.size()));
        ps.push_back(make_particle(p, sph::ParticleKind::WallFixed, wall_density(p), mass));
      }
    }
  }

  // Paddle column behind x = 0.
  if (d > 0.0) {
    for (long i = -1; i >= -layers; --i) {
      for (long j = 0; j < j_top; ++j) {
        const Vec2 p{lattice(i, dp), lattice(j, dp)};
        ps.push_back(make_particle(p, sph::ParticleKind::WallPiston, hydrostatic(p.z), mass));
      }
    }
  }

  out.domain.lo = Vec2{lattice(-layers - 2, dp), -(layers + 2) * dp};
  out.domain.hi = Vec2{lattice(i_end + layers + 2, dp), top + 10.0};
  for (auto& p : ps) p.pressure = sph::eos_pressure(p.density, fluid);
  return out;
}

sph::Simulation make_simulation(const FlumeScenario& scn, SeededFlume seeded) {
  sph::SolverConfig solver;
  solver.cfl = scn.cfl;
  solver.domain = seeded.domain;
  std::optional<sph::RayleighPiston> piston;
  if (scn.still_water_depth > 0.0) {
    piston.emplace(sph::RayleighPiston::Params{scn.wave_height, scn.still_water_depth, scn.g, scn.ramp});
  }
  return sph::Simulation(std::move(seeded.state), kernel_for(scn), fluid_for(scn), solver, std::move(piston));
}

SeededFlume seed_tank(double length, double depth, double wall_height, double dp, int wall_layers,
                      const sph::FluidConstants& fluid) {
  if (!(length > 0.0) || !(depth >= 0.0) || !(wall_height >= depth) || !(dp > 0.0) || wall_layers < 2) {
    fail(ErrorCode::InvalidGeometry, "invalid tank dimensions");
  }
  SeededFlume out;
  out.dp = dp;
  const double mass = fluid.rho0 * dp * dp;
  auto hydrostatic = [&](double z) {
    return z < depth ? sph::eos_density(fluid.rho0 * fluid.g * (depth - z), fluid) : fluid.rho0;
  };
  auto& ps = out.state.particles;
  const long nx = std::lround(length / dp);
  const long nz_fluid = std::lround(depth / dp);
  const long nz_wall = std::lround(wall_height / dp);
  for (long i = 0; i < nx; ++i) {
    for (long j = 0; j < nz_fluid; ++j) {
      const Vec2 p{lattice(i, dp), lattice(j, dp)};
      ps.push_back(make_particle(p, sph::ParticleKind::Fluid, hydrostatic(p.z), mass));
    }
  }
  for (long i = -wall_layers; i < nx + wall_layers; ++i) {
    for (long j = -wall_layers; j < nz_wall; ++j) {
      if (i >= 0 && i < nx && j >= 0) continue;
      const Vec2 p{lattice(i, dp), lattice(j, dp)};
      if (i >= nx && j >= 0) out.structure_indices.push_back(static_cast<std::uint32_t>(ps.size()));
      ps.push_back(make_particle(p, sph::ParticleKind::WallFixed, hydrostatic(p.z), mass));
    }
  }
  out.has_structure = true;
  out.structure.x_min = nx * dp;
  out.structure.x_max = (nx + wall_layers) * dp;
  out.structure.z_min = 0.0;
  out.structure.z_max = wall_height;
  out.structure.width_y = 1.0;
  out.domain.lo = Vec2{-(wall_layers + 2) * dp, -(wall_layers + 2) * dp};
  out.domain.hi = Vec2{(nx + wall_layers + 2) * dp, wall_height + 10.0};
  for (auto& p : ps) p.pressure = sph::eos_pressure(p.density, fluid);
  return out;
}

}  // namespace flume::setup
