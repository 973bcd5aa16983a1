#include "flume/gauges.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace flume::setup {

double sample_gauge(const sph::SimState& state, double x, double half_width, double dp,
                    double still_water_depth) {
  double z_top = -std::numeric_limits<double>::infinity();
  for (const auto& p : state.particles) {
    if (!p.active || !p.is_fluid()) continue;
    if (std::abs(p.position.x - x) <= half_width) z_top = std::max(z_top, p.position.z);
  }
  if (!std::isfinite(z_top)) return -still_water_depth;
  return z_top + 0.5 * dp - still_water_depth;
}

double GaugeTrace::peak() const noexcept {
  if (eta.empty()) return std::numeric_limits<double>::quiet_NaN();
  return *std::max_element(eta.begin(), eta.end());
}

double GaugeTrace::peak_time() const noexcept {
  if (eta.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto it = std::max_element(eta.begin(), eta.end());
  return times[static_cast<std::size_t>(it - eta.begin())];
}

void write_trace_csv(const std::filesystem::path& path, const GaugeTrace& trace, double eta0, double t0) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::Io, "cannot write " + path.string());
  os << "t,t_T0,eta,eta_eta0,dry\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    os << csv::num(trace.times[i]) << ',' << csv::num(trace.times[i] / t0) << ',' << csv::num(trace.eta[i])
       << ',' << csv::num(trace.eta[i] / eta0) << ',' << (trace.is_dry(i) ? 1 : 0) << '\n';
  }
}

GaugeTrace read_trace_csv(const std::filesystem::path& path) {
  const csv::Table t = csv::read(path);
  GaugeTrace trace;
  trace.id = path.stem().string();
  trace.times = t.numbers("t");
  trace.eta = t.numbers("eta");
  return trace;
}

}  // namespace flume::setup
