#include "forces/forces.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace flume::forces {

std::string_view to_string(Estimator e) noexcept {
  switch (e) {
    case Estimator::Sph: return "sph";
    case Estimator::Asce: return "asce";
    case Estimator::SemiEmpirical: return "semi_empirical";
  }
  return "unknown";
}

Estimator estimator_from_string(std::string_view s) {
  if (s == "sph" || s == "SPH") return Estimator::Sph;
  if (s == "asce" || s == "ASCE") return Estimator::Asce;
  if (s == "semi_empirical" || s == "semi-empirical" || s == "SemiEmpirical") return Estimator::SemiEmpirical;
  fail(ErrorCode::InvalidArgument, "unknown estimator '" + std::string(s) + "'");
}

double ForceRecord::peak() const {
  if (force.empty()) fail(ErrorCode::EmptyHistory, "empty force record");
  return *std::max_element(force.begin(), force.end());
}

double ForceRecord::peak_time() const {
  if (force.empty()) fail(ErrorCode::EmptyHistory, "empty force record");
  return times[static_cast<std::size_t>(std::max_element(force.begin(), force.end()) - force.begin())];
}

void write_force_csv(std::ostream& os, const ForceRecord& rec, double t0) {
  if (rec.times.size() != rec.force.size()) fail(ErrorCode::LengthMismatch, "force record length mismatch");
  if (!(rec.f0 > 0.0)) fail(ErrorCode::InvalidArgument, "F0 must be positive");
  os << "t,t_T0,F,F_F0,estimator\n";
  const auto name = to_string(rec.estimator);
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    os << csv::num(rec.times[i]) << ',' << csv::num(rec.times[i] / t0) << ',' << csv::num(rec.force[i]) << ','
       << csv::num(rec.force[i] / rec.f0) << ',' << name << '\n';
  }
}

void write_force_csv(const std::filesystem::path& path, const ForceRecord& rec, double t0) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::Io, "cannot write " + path.string());
  write_force_csv(os, rec, t0);
}

ForceRecord read_force_csv(const std::filesystem::path& path) {
  const csv::Table t = csv::read(path);
  ForceRecord rec;
  rec.times = t.numbers("t");
  rec.force = t.numbers("F");
  if (!t.rows.empty() && t.has_column("estimator")) {
    rec.estimator = estimator_from_string(t.rows.front()[t.column("estimator")]);
  }
  // F0 is recoverable from any row with a non-zero force.
  const auto ff0 = t.numbers("F_F0");
  for (std::size_t i = 0; i < ff0.size(); ++i) {
    if (ff0[i] != 0.0) {
      rec.f0 = rec.force[i] / ff0[i];
      break;
    }
  }
  return rec;
}

double sph_structure_force(const sph::SimState& state, std::span<const std::uint32_t> structure_indices,
                           const setup::StructureBox& box, const sph::KernelConfig& kernel,
                           const sph::FluidConstants& fluid) {
  const auto& ps = state.particles;
  const double h = kernel.h;
  const double support2 = kernel.support_radius() * kernel.support_radius();
  const double inv_h2 = 1.0 / (h * h);
  const double five_alpha_inv_h2 = 5.0 * kernel.alpha_d() * inv_h2;
  const double eta2 = 0.01 * h * h;
  double fx = 0.0;
  for (const auto ib : structure_indices) {
    const sph::Particle& pb = ps[ib];
    const double cb = sph::sound_speed(pb.density, fluid);
    state.grid.for_each_candidate(pb.position, [&](std::uint32_t ia) {
      const sph::Particle& pa = ps[ia];
      if (!pa.active || !pa.is_fluid()) return;
      const Vec2 r = pa.position - pb.position;
      const double r2 = norm2(r);
      if (r2 >= support2 || r2 <= 0.0) return;
      const double f = sph::wendland_grad_factor(r2, inv_h2, five_alpha_inv_h2);
      double visc = 0.0;
      const double ur = dot(pa.velocity - pb.velocity, r);
      if (ur < 0.0) {
        const double mu = h * ur / (r2 + eta2);
        const double ca = sph::sound_speed(pa.density, fluid);
        visc = -fluid.alpha_visc * 0.5 * (ca + cb) * mu / (0.5 * (pa.density + pb.density));
      }
      // Force on fluid particle a from b is -m_a m_b (...) grad_a W; b feels the opposite.
      fx += pa.mass * pb.mass * ((pa.pressure + pb.pressure) / (pa.density * pb.density) + visc) * f * r.x;
    });
  }
  return fx * box.width_y;
}

double sph_pressure_area_force(const sph::SimState& state, std::span<const std::uint32_t> structure_indices,
                               const setup::StructureBox& box, double dp, double support_radius) {
  const auto& ps = state.particles;
  if (structure_indices.empty()) return 0.0;

  bool wet = false;
  for (const auto& p : ps) {
    if (!p.active || !p.is_fluid()) continue;
    const double dx = std::max({box.x_min - p.position.x, 0.0, p.position.x - box.x_max});
    const double dz = std::max({box.z_min - p.position.z, 0.0, p.position.z - box.z_max});
    if (dx * dx + dz * dz < support_radius * support_radius) {
      wet = true;
      break;
    }
  }
  if (!wet) return 0.0;

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -std::numeric_limits<double>::infinity();
  for (const auto i : structure_indices) {
    x_lo = std::min(x_lo, ps[i].position.x);
    x_hi = std::max(x_hi, ps[i].position.x);
  }
  const double tol = 0.25 * dp;
  double fx = 0.0;
  for (const auto i : structure_indices) {
    const auto& p = ps[i];
    if (std::abs(p.position.x - x_lo) < tol) {
      fx += p.pressure * dp;
    } else if (std::abs(p.position.x - x_hi) < tol) {
      fx -= p.pressure * dp;
    }
  }
  return fx * box.width_y;
}

namespace {

void check_asce(const AsceParams& p) {
  if (!(p.cp >= 1.6 && p.cp <= 3.5)) {
    fail(ErrorCode::CoefficientOutOfRange, "Cp=" + std::to_string(p.cp) + " outside [1.6, 3.5]");
  }
  if (!(p.gamma_w > 0.0)) fail(ErrorCode::InvalidArgument, "gamma_w must be positive");
  if (!(p.ds >= 0.0)) fail(ErrorCode::InvalidArgument, "ds must be non-negative");
}

}  // namespace

double asce_pressure(const AsceParams& p) {
  check_asce(p);
  return (p.cp + 1.2) * p.gamma_w * p.ds;
}

double asce_force_per_length(const AsceParams& p) {
  check_asce(p);
  return (1.1 * p.cp + 2.4) * p.gamma_w * p.ds * p.ds;
}

ForceRecord asce_envelope(const AsceParams& p, double width) {
  ForceRecord rec;
  rec.estimator = Estimator::Asce;
  rec.times = {0.0};
  rec.force = {asce_force_per_length(p) * width};
  return rec;
}

ForceRecord asce_history(const setup::GaugeTrace& front_gauge, double still_water_depth, double structure_base,
                         double width, double cp, double gamma_w) {
  ForceRecord rec;
  rec.estimator = Estimator::Asce;
  rec.times = front_gauge.times;
  rec.force.resize(front_gauge.eta.size());
  for (std::size_t i = 0; i < front_gauge.eta.size(); ++i) {
    const double level = front_gauge.eta[i] + still_water_depth;
    const AsceParams p{cp, gamma_w, std::max(0.0, level - structure_base)};
    rec.force[i] = asce_force_per_length(p) * width;
  }
  return rec;
}

double semi_empirical_static(double hb, const SemiEmpiricalParams& p) {
  const double head = hb - p.base_offset;
  if (head <= 0.0) return 0.0;
  return 0.5 * p.width * head * (p.rho * p.g * head);
}

double semi_empirical_dynamic(double veff, const SemiEmpiricalParams& p) {
  return 0.5 * p.rho * p.cd * p.area * veff * veff;
}

ForceRecord semi_empirical_force(std::span<const double> times, std::span<const double> hb,
                                 std::span<const double> veff, const SemiEmpiricalParams& p) {
  if (times.size() != hb.size() || times.size() != veff.size()) {
    fail(ErrorCode::LengthMismatch, "semi-empirical inputs differ in length (" + std::to_string(times.size()) +
                                        ", " + std::to_string(hb.size()) + ", " + std::to_string(veff.size()) +
                                        ")");
  }
  if (!(p.cd > 0.0) || !(p.area > 0.0)) fail(ErrorCode::InvalidParams, "Cd and A must be positive");
  ForceRecord rec;
  rec.estimator = Estimator::SemiEmpirical;
  rec.times.assign(times.begin(), times.end());
  rec.force.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    rec.force[i] = semi_empirical_static(hb[i], p) + semi_empirical_dynamic(veff[i], p);
  }
  return rec;
}

std::string_view to_string(FlowRegime r) noexcept {
  switch (r) {
    case FlowRegime::Subcritical: return "subcritical";
    case FlowRegime::Critical: return "critical";
    case FlowRegime::Supercritical: return "supercritical";
  }
  return "unknown";
}

Froude froude_number(double veff, double depth, double g) {
  if (!(depth > 0.0)) fail(ErrorCode::NonPositiveDepth, "Froude depth must be positive");
  if (!(g > 0.0)) fail(ErrorCode::InvalidArgument, "gravity must be positive");
  Froude fr;
  fr.value = veff / std::sqrt(g * depth);
  if (fr.value < 1.0) {
    fr.regime = FlowRegime::Subcritical;
  } else if (fr.value > 1.0) {
    fr.regime = FlowRegime::Supercritical;
  } else {
    fr.regime = FlowRegime::Critical;
  }
  return fr;
}

double effective_velocity(const sph::SimState& state, const setup::StructureBox& box, double dp) {
  // strip of half-width 2 dp centred on the upstream face, structure height only
  const double x_hi = box.x_min + 2.0 * dp;
  const double x_lo = box.x_min - 2.0 * dp;
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : state.particles) {
    if (!p.active || !p.is_fluid()) continue;
    const Vec2 r = p.position;
    if (r.x < x_lo || r.x > x_hi || r.z < box.z_min || r.z > box.z_max) continue;
    sum += norm(p.velocity);
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace flume::forces
