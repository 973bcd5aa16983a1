#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flume/gauges.hpp"
#include "flume/scenario.hpp"
#include "sph/fluid.hpp"
#include "sph/kernel.hpp"
#include "sph/particle.hpp"

namespace flume::forces {

inline constexpr double kF0 = 695.0;  ///< characteristic force for normalised output [N]

enum class Estimator { Sph, Asce, SemiEmpirical };

std::string_view to_string(Estimator e) noexcept;
Estimator estimator_from_string(std::string_view s);

struct ForceRecord {
  Estimator estimator = Estimator::Sph;
  std::vector<double> times;
  std::vector<double> force;
  double f0 = kF0;

  double peak() const;
  double peak_time() const;
};

/// Columns t,t_T0,F,F_F0,estimator. Throws LengthMismatch / InvalidArgument
/// when the record is inconsistent.
void write_force_csv(const std::filesystem::path& path, const ForceRecord& rec, double t0 = setup::kT0);
void write_force_csv(std::ostream& os, const ForceRecord& rec, double t0 = setup::kT0);
ForceRecord read_force_csv(const std::filesystem::path& path);

/// Horizontal fluid load on the structure block: the x-component of the
/// pressure and viscous pair forces that fluid particles exert on the block's
/// wall particles (equal and opposite to the block's push on the fluid),
/// times width_y. Zero when no fluid particle is within the kernel support
/// of the block. The state's cell grid must be current.
double sph_structure_force(const sph::SimState& state, std::span<const std::uint32_t> structure_indices,
                           const setup::StructureBox& box, const sph::KernelConfig& kernel,
                           const sph::FluidConstants& fluid);

/// Pressure-area variant: wall pressure times dp on the outermost particle
/// column of each vertical face, signed towards the block centre, times
/// width_y. Kept as a diagnostic; wall densities that stay compressed after
/// an impact make it overestimate the load.
double sph_pressure_area_force(const sph::SimState& state, std::span<const std::uint32_t> structure_indices,
                               const setup::StructureBox& box, double dp, double support_radius);

struct AsceParams {
  double cp = 3.5;
  double gamma_w = 9810.0;  ///< [N/m^3]
  double ds = 0.0;          ///< [m]
};

/// (Cp + 1.2) gamma_w ds.
double asce_pressure(const AsceParams& p);
/// (1.1 Cp + 2.4) gamma_w ds^2.
double asce_force_per_length(const AsceParams& p);

/// Constant-force record for an explicit ds: F = width * asce_force_per_length.
ForceRecord asce_envelope(const AsceParams& p, double width);

/// Time history of the code load with ds(t) the inundation depth at the
/// structure front (water level minus structure base, floored at zero).
ForceRecord asce_history(const setup::GaugeTrace& front_gauge, double still_water_depth, double structure_base,
                         double width, double cp, double gamma_w);

struct SemiEmpiricalParams {
  double cd = 2.0;
  double width = 0.4;        ///< [m]
  double area = 0.2;         ///< frontal area [m^2]
  double base_offset = 0.75; ///< level below which the static term vanishes [m]
  double rho = 1000.0;
  double g = 9.81;
};

double semi_empirical_static(double hb, const SemiEmpiricalParams& p);
double semi_empirical_dynamic(double veff, const SemiEmpiricalParams& p);

/// hb(t) is the absolute water level (eta + still-water depth) at the gauge in
/// front of the structure.
ForceRecord semi_empirical_force(std::span<const double> times, std::span<const double> hb,
                                 std::span<const double> veff, const SemiEmpiricalParams& p);

enum class FlowRegime { Subcritical, Critical, Supercritical };
std::string_view to_string(FlowRegime r) noexcept;

struct Froude {
  double value = 0.0;
  FlowRegime regime = FlowRegime::Subcritical;
};

Froude froude_number(double veff, double depth, double g = 9.81);

/// Mean fluid speed in the strip |x - x_min| <= 2 dp at the upstream face,
/// between the block base and top. Zero when the strip is dry.
double effective_velocity(const sph::SimState& state, const setup::StructureBox& box, double dp);

}  // namespace flume::forces
