#include "sph/snapshot.hpp"

#include <fstream>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace flume::sph {

void write_snapshot(std::ostream& os, const SimState& state) {
  os << "id,kind,x,z,vx,vz,rho,p\n";
  for (std::size_t i = 0; i < state.particles.size(); ++i) {
    const Particle& p = state.particles[i];
    if (!p.active) continue;
    os << i << ',' << to_string(p.kind) << ',' << csv::num(p.position.x) << ',' << csv::num(p.position.z)
       << ',' << csv::num(p.velocity.x) << ',' << csv::num(p.velocity.z) << ',' << csv::num(p.density)
       << ',' << csv::num(p.pressure) << '\n';
  }
}

void write_snapshot(const std::filesystem::path& path, const SimState& state) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::Io, "cannot open snapshot file " + path.string());
  write_snapshot(os, state);
}

}  // namespace flume::sph
