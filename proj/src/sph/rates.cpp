#include "sph/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace flume::sph {

void update_pressures(SimState& state, const FluidConstants& consts) {
  auto& ps = state.particles;
  const auto n = static_cast<std::ptrdiff_t>(ps.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& p = ps[static_cast<std::size_t>(i)];
    p.pressure = eos_pressure(p.density, consts);
  }
}

void refresh_grid(SimState& state, const KernelConfig& kernel) {
  const auto& ps = state.particles;
  std::vector<Vec2> pos(ps.size());
  std::vector<std::uint8_t> active(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    pos[i] = ps[i].position;
    active[i] = ps[i].active ? 1 : 0;
  }
  state.grid.rebuild(pos, active, kernel.support_radius());
}

namespace {

template <bool kContinuity, bool kMomentum>
void accumulate(const SimState& state, const KernelConfig& kernel, const FluidConstants& consts, Rates& out) {
  const auto& ps = state.particles;
  const std::size_t n = ps.size();
  if constexpr (kContinuity) out.drho.assign(n, 0.0);
  if constexpr (kMomentum) out.accel.assign(n, Vec2{});

  const double h = kernel.h;
  const double support2 = kernel.support_radius() * kernel.support_radius();
  const double inv_h2 = 1.0 / (h * h);
  const double five_alpha_inv_h2 = 5.0 * kernel.alpha_d() * inv_h2;
  const double eta2 = 0.01 * h * h;
  const double diff_coeff = consts.delta_diff * h * consts.c0;
  // Linearised hydrostatic density difference per metre of height:
  // rho_a^H - rho_b^H = rho0 g (z_b - z_a) / c0^2.
  const double hydro_grad = consts.rho0 * consts.g / (consts.c0 * consts.c0);

  std::vector<double> cs;
  if constexpr (kMomentum) {
    const double sound_exp = 0.5 * (consts.gamma - 1.0);
    cs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      cs[i] = consts.c0 * std::pow(ps[i].density / consts.rho0, sound_exp);
    }
  }

  double max_accel = 0.0;
  double max_speed = 0.0;
  const auto sn = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel for schedule(static) reduction(max : max_accel, max_speed)
  for (std::ptrdiff_t ia = 0; ia < sn; ++ia) {
    const auto a = static_cast<std::size_t>(ia);
    const Particle& pa = ps[a];
    if (!pa.active) continue;
    const bool a_fluid = pa.is_fluid();
    if (kMomentum && !kContinuity && !a_fluid) continue;
    const double rho_a = pa.density;
    const double p_a = pa.pressure;
    double div = 0.0;
    double diffusion = 0.0;
    Vec2 acc{};

    state.grid.for_each_candidate(pa.position, [&](std::uint32_t jb) {
      const std::size_t b = jb;
      if (b == a) return;
      const Particle& pb = ps[b];
      if (!pb.active) return;  // dropped since the grid was built
      const bool b_fluid = pb.is_fluid();
      if (!a_fluid && !b_fluid) return;
      const Vec2 r = pa.position - pb.position;
      const double r2 = norm2(r);
      if (r2 >= support2 || r2 <= 0.0) return;
      const double f = wendland_grad_factor(r2, inv_h2, five_alpha_inv_h2);
      const Vec2 grad = f * r;
      const double rho_b = pb.density;
      const Vec2 u_ab = pa.velocity - pb.velocity;

      if constexpr (kContinuity) {
        const double vol_b = pb.mass / rho_b;
        div += vol_b * dot(u_ab, grad);
        if (a_fluid && b_fluid) {
          const double hydro = hydro_grad * (pb.position.z - pa.position.z);
          const double psi = 2.0 * ((rho_a - rho_b) - hydro);
          // (r . grad W) / |r|^2 == f
          diffusion += psi * f * vol_b;
        }
      }
      if constexpr (kMomentum) {
        if (!a_fluid) return;
        const double ur = dot(u_ab, r);
        double visc = 0.0;
        if (ur < 0.0) {
          const double mu = h * ur / (r2 + eta2);
          visc = -consts.alpha_visc * 0.5 * (cs[a] + cs[b]) * mu / (0.5 * (rho_a + rho_b));
        }
        acc -= pb.mass * ((p_a + pb.pressure) / (rho_a * rho_b) + visc) * grad;
      }
    });

    if constexpr (kContinuity) {
      double dr = rho_a * div;
      if (a_fluid) dr += diff_coeff * diffusion;
      out.drho[a] = dr;
      if (pa.kind != ParticleKind::WallFixed) max_speed = std::max(max_speed, norm(pa.velocity));
    }
    if constexpr (kMomentum) {
      if (a_fluid) {
        acc.z -= consts.g;
        max_accel = std::max(max_accel, norm(acc));
      }
      out.accel[a] = acc;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    bool finite = true;
    if constexpr (kContinuity) finite = finite && std::isfinite(out.drho[i]);
    if constexpr (kMomentum) finite = finite && std::isfinite(out.accel[i].x) && std::isfinite(out.accel[i].z);
    if (!finite) {
      fail(ErrorCode::NonFiniteRate,
           "non-finite rate at particle " + std::to_string(i) + " (x=" + std::to_string(ps[i].position.x) +
               ", z=" + std::to_string(ps[i].position.z) + ", rho=" + std::to_string(ps[i].density) + ")");
    }
  }
  if constexpr (kContinuity) out.max_speed = max_speed;
  if constexpr (kMomentum) out.max_accel = max_accel;
}

}  // namespace

Rates compute_rates(const SimState& state, const KernelConfig& kernel, const FluidConstants& consts) {
  Rates out;
  compute_rates(state, kernel, consts, out);
  return out;
}

void compute_rates(const SimState& state, const KernelConfig& kernel, const FluidConstants& consts,
                   Rates& out) {
  accumulate<true, true>(state, kernel, consts, out);
}

void compute_continuity(const SimState& state, const KernelConfig& kernel, const FluidConstants& consts,
                        Rates& out) {
  accumulate<true, false>(state, kernel, consts, out);
}

void compute_momentum(const SimState& state, const KernelConfig& kernel, const FluidConstants& consts,
                      Rates& out) {
  accumulate<false, true>(state, kernel, consts, out);
}

}  // namespace flume::sph
