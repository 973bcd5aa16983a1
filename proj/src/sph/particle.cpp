#include "sph/particle.hpp"

namespace flume::sph {

std::string_view to_string(ParticleKind kind) noexcept {
  switch (kind) {
    case ParticleKind::Fluid: return "fluid";
    case ParticleKind::WallFixed: return "wall";
    case ParticleKind::WallPiston: return "piston";
  }
  return "unknown";
}

std::size_t SimState::count(ParticleKind kind) const noexcept {
  std::size_t n = 0;
  for (const auto& p : particles) {
    if (p.kind == kind) ++n;
  }
  return n;
}

double SimState::total_mass() const noexcept {
  double m = 0.0;
  for (const auto& p : particles) m += p.mass;
  return m;
}

}  // namespace flume::sph
