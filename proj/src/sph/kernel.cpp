#include "sph/kernel.hpp"

#include <numbers>

namespace flume::sph {

KernelConfig KernelConfig::from_spacing(double dp, double h_over_dp) {
  KernelConfig cfg;
  cfg.h = h_over_dp * dp;
  return cfg;
}

double KernelConfig::alpha_d() const noexcept { return 7.0 / (4.0 * std::numbers::pi * h * h); }

double wendland_w(double r, const KernelConfig& cfg) noexcept {
  const double q = r / cfg.h;
  if (q >= 2.0) {
    return 0.0;
  }
  const double t = 1.0 - 0.5 * q;
  return cfg.alpha_d() * t * t * t * t * (1.0 + 2.0 * q);
}

double wendland_dwdr(double r, const KernelConfig& cfg) noexcept {
  const double q = r / cfg.h;
  if (q >= 2.0) {
    return 0.0;
  }
  const double t = 1.0 - 0.5 * q;
  // d/dq [(1 - q/2)^4 (1 + 2q)] = -5 q (1 - q/2)^3
  return -5.0 * q * cfg.alpha_d() * t * t * t / cfg.h;
}

Vec2 wendland_grad_w(Vec2 r_vec, const KernelConfig& cfg) noexcept {
  const double inv_h2 = 1.0 / (cfg.h * cfg.h);
  const double f = wendland_grad_factor(norm2(r_vec), inv_h2, 5.0 * cfg.alpha_d() * inv_h2);
  return f * r_vec;
}

}  // namespace flume::sph
