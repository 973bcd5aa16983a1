#pragma once

#include "core/vec2.hpp"

namespace flume::sph {

/// Wendland C2 kernel parameters for the 2-D slice.
struct KernelConfig {
  double h = 0.1;       ///< smoothing length [m]
  double kappa = 2.0;   ///< support radius in units of h

  static KernelConfig from_spacing(double dp, double h_over_dp = 2.0);

  double support_radius() const noexcept { return kappa * h; }
  /// 7 / (4 pi h^2)
  double alpha_d() const noexcept;
};

/// Kernel weight W(r) [1/m^2]; zero outside the compact support.
double wendland_w(double r, const KernelConfig& cfg) noexcept;

/// dW/dr [1/m^3].
double wendland_dwdr(double r, const KernelConfig& cfg) noexcept;

/// Gradient of W with respect to the first particle, evaluated at r_vec = r_a - r_b.
/// Defined as the zero vector at r = 0.
Vec2 wendland_grad_w(Vec2 r_vec, const KernelConfig& cfg) noexcept;

/// Scalar factor F such that grad W = F * r_vec. Hot-loop form of wendland_grad_w.
inline double wendland_grad_factor(double r2, double inv_h2, double five_alpha_inv_h2) noexcept {
  const double q = std::sqrt(r2 * inv_h2);
  if (q >= 2.0) {
    return 0.0;
  }
  const double t = 1.0 - 0.5 * q;
  return -five_alpha_inv_h2 * t * t * t;
}

}  // namespace flume::sph
