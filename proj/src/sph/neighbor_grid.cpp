#include "sph/neighbor_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace flume::sph {

void CellGrid::rebuild(std::span<const Vec2> positions, std::span<const std::uint8_t> active,
                       double cell_size) {
  cell_size_ = cell_size;
  Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
  Vec2 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!active[i]) continue;
    const Vec2 p = positions[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.z)) {
      fail(ErrorCode::NonFiniteRate, "non-finite particle position at index " + std::to_string(i));
    }
    lo.x = std::min(lo.x, p.x);
    lo.z = std::min(lo.z, p.z);
    hi.x = std::max(hi.x, p.x);
    hi.z = std::max(hi.z, p.z);
  }
  if (lo.x > hi.x) {
    lo = hi = Vec2{};
  }
  origin_ = lo;
  nx_ = static_cast<int>(std::floor((hi.x - lo.x) / cell_size_)) + 1;
  nz_ = static_cast<int>(std::floor((hi.z - lo.z) / cell_size_)) + 1;
  const std::size_t ncells = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(nz_);

  cell_start_.assign(ncells + 1, 0);
  cell_of_.resize(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!active[i]) continue;
    const auto c = static_cast<std::uint32_t>(cell_z(positions[i].z) * nx_ + cell_x(positions[i].x));
    cell_of_[i] = c;
    ++cell_start_[c + 1];
  }
  for (std::size_t c = 0; c < ncells; ++c) {
    cell_start_[c + 1] += cell_start_[c];
  }
  sorted_.resize(cell_start_[ncells]);
  std::vector<std::uint32_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!active[i]) continue;
    sorted_[cursor[cell_of_[i]]++] = static_cast<std::uint32_t>(i);
  }
}

int CellGrid::cell_x(double x) const noexcept {
  const int c = static_cast<int>((x - origin_.x) / cell_size_);
  return std::clamp(c, 0, nx_ - 1);
}

int CellGrid::cell_z(double z) const noexcept {
  const int c = static_cast<int>((z - origin_.z) / cell_size_);
  return std::clamp(c, 0, nz_ - 1);
}

std::vector<std::size_t> CellGrid::brute_force_neighbors(std::span<const Vec2> positions,
                                                         std::span<const std::uint8_t> active,
                                                         Vec2 p, double radius) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (active[j] && norm2(positions[j] - p) < radius * radius) {
      out.push_back(j);
    }
  }
  return out;
}

}  // namespace flume::sph
