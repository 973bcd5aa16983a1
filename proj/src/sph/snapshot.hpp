#pragma once

#include <filesystem>
#include <ostream>

#include "sph/particle.hpp"

namespace flume::sph {

/// CSV with columns id,kind,x,z,vx,vz,rho,p. Inactive particles are omitted.
void write_snapshot(std::ostream& os, const SimState& state);
void write_snapshot(const std::filesystem::path& path, const SimState& state);

}  // namespace flume::sph
