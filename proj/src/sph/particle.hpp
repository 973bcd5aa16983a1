#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "core/vec2.hpp"
#include "sph/neighbor_grid.hpp"

namespace flume::sph {

enum class ParticleKind : std::uint8_t { Fluid, WallFixed, WallPiston };

std::string_view to_string(ParticleKind kind) noexcept;

struct Particle {
  Vec2 position;
  Vec2 velocity;
  double density = 1000.0;
  double pressure = 0.0;
  double mass = 0.0;
  ParticleKind kind = ParticleKind::Fluid;
  /// Cleared when a fluid particle leaves the domain; inactive particles keep
  /// their mass but no longer interact.
  bool active = true;

  bool is_fluid() const noexcept { return kind == ParticleKind::Fluid; }
  bool is_wall() const noexcept { return kind != ParticleKind::Fluid; }
};

/// Axis-aligned box outside which fluid particles are excluded.
struct DomainBox {
  Vec2 lo{-1e30, -1e30};
  Vec2 hi{1e30, 1e30};

  bool contains(Vec2 p) const noexcept {
    return p.x >= lo.x && p.x <= hi.x && p.z >= lo.z && p.z <= hi.z;
  }
};

struct SimState {
  std::vector<Particle> particles;
  double time = 0.0;
  std::int64_t step_count = 0;
  /// Current wavemaker displacement applied to WallPiston particles.
  double piston_offset = 0.0;
  CellGrid grid;

  std::size_t count(ParticleKind kind) const noexcept;
  double total_mass() const noexcept;
};

}  // namespace flume::sph
