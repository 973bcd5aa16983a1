#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "core/vec2.hpp"

namespace flume::sph {

/// Uniform cell list with cell size equal to the kernel support radius, so all
/// neighbours of a particle lie in the 3x3 block around its cell. Particles are
/// bucketed with a stable counting sort; iteration order is therefore fixed by
/// particle index and the result is independent of thread count.
class CellGrid {
 public:
  /// Rebuild from positions. Entries with active[i] == false are skipped.
  void rebuild(std::span<const Vec2> positions, std::span<const std::uint8_t> active,
               double cell_size);

  double cell_size() const noexcept { return cell_size_; }
  int nx() const noexcept { return nx_; }
  int nz() const noexcept { return nz_; }

  /// Calls fn(j) for every binned particle j in the 3x3 block around p.
  template <typename Fn>
  void for_each_candidate(Vec2 p, Fn&& fn) const {
    const int cx = cell_x(p.x);
    const int cz = cell_z(p.z);
    for (int dz = -1; dz <= 1; ++dz) {
      const int z = cz + dz;
      if (z < 0 || z >= nz_) continue;
      const int x0 = cx > 0 ? cx - 1 : 0;
      const int x1 = cx + 1 < nx_ ? cx + 1 : nx_ - 1;
      // cells in a row are contiguous in the sorted array
      const std::size_t row = static_cast<std::size_t>(z) * static_cast<std::size_t>(nx_);
      const std::uint32_t begin = cell_start_[row + static_cast<std::size_t>(x0)];
      const std::uint32_t end = cell_start_[row + static_cast<std::size_t>(x1) + 1];
      for (std::uint32_t k = begin; k < end; ++k) {
        fn(sorted_[k]);
      }
    }
  }

  /// Brute-force reference used by tests: every active particle within radius.
  static std::vector<std::size_t> brute_force_neighbors(std::span<const Vec2> positions,
                                                        std::span<const std::uint8_t> active,
                                                        Vec2 p, double radius);

 private:
  int cell_x(double x) const noexcept;
  int cell_z(double z) const noexcept;

  double cell_size_ = 1.0;
  Vec2 origin_;
  int nx_ = 0;
  int nz_ = 0;
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> sorted_;
  std::vector<std::uint32_t> cell_of_;
};

}  // namespace flume::sph
