#include "sph/wavemaker.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace flume::sph {
namespace {

double sech2(double x) noexcept {
  if (std::abs(x) > 350.0) return 0.0;
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

// The paddle starts when the sech^2 argument is this many outskirt lengths
// behind the crest, i.e. eta(0, 0) = H sech^2(4) ~ 1.3e-3 H.
constexpr double kStartArgument = 4.0;
constexpr double kTableStep = 5.0e-4;

}  // namespace

double RayleighPiston::celerity(double wave_height, double depth, double g) {
  return std::sqrt(g * (wave_height + depth));
}

double RayleighPiston::outskirt_coefficient(double wave_height, double depth) {
  return std::sqrt(3.0 * wave_height / (4.0 * depth * depth * (wave_height + depth)));
}

double RayleighPiston::stroke(double wave_height, double depth) {
  return 4.0 * std::sqrt(wave_height * (wave_height + depth) / 3.0);
}

double RayleighPiston::wavelength(double wave_height, double depth) {
  return 2.0 * std::numbers::pi / outskirt_coefficient(wave_height, depth);
}

RayleighPiston::RayleighPiston(const Params& params) : params_(params) {
  if (!(params.wave_height > 0.0) || !(params.depth > 0.0) || !(params.g > 0.0)) {
    fail(ErrorCode::InvalidArgument, "wavemaker requires H > 0, depth > 0, g > 0");
  }
  celerity_ = celerity(params.wave_height, params.depth, params.g);
  k_ = outskirt_coefficient(params.wave_height, params.depth);
  half_stroke_ = 0.5 * stroke(params.wave_height, params.depth);
  ramp_ = params.ramp > 0.0 ? params.ramp : 2.0 * (kStartArgument / k_ + half_stroke_) / celerity_;

  // Integrate until the crest has passed symmetrically and the rate is negligible.
  t_end_ = 1.5 * ramp_;
  const auto n = static_cast<std::size_t>(std::ceil(t_end_ / kTableStep));
  table_dt_ = t_end_ / static_cast<double>(n);
  x_.resize(n + 1);
  v_.resize(n + 1);
  double x = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * table_dt_;
    x_[i] = x;
    v_[i] = paddle_rate(x, t);
    if (i == n) break;
    const double h = table_dt_;
    const double k1 = paddle_rate(x, t);
    const double k2 = paddle_rate(x + 0.5 * h * k1, t + 0.5 * h);
    const double k3 = paddle_rate(x + 0.5 * h * k2, t + 0.5 * h);
    const double k4 = paddle_rate(x + h * k3, t + h);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

double RayleighPiston::surface_profile(double x_s, double t) const noexcept {
  const double arg = k_ * (celerity_ * (t - 0.5 * ramp_) + half_stroke_ - x_s);
  return params_.wave_height * sech2(arg);
}

double RayleighPiston::paddle_rate(double x_s, double t) const noexcept {
  const double eta = surface_profile(x_s, t);
  return celerity_ * eta / (params_.depth + eta);
}

double RayleighPiston::displacement(double t) const noexcept {
  if (t <= 0.0) return 0.0;
  if (t >= t_end_) return x_.back();
  const double s = t / table_dt_;
  const auto i = std::min(static_cast<std::size_t>(s), x_.size() - 2);
  const double u = s - static_cast<double>(i);
  const double h = table_dt_;
  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * x_[i] + (u3 - 2 * u2 + u) * h * v_[i] +
         (-2 * u3 + 3 * u2) * x_[i + 1] + (u3 - u2) * h * v_[i + 1];
}

double RayleighPiston::velocity(double t) const noexcept {
  if (t <= 0.0 || t >= t_end_) return 0.0;
  const double s = t / table_dt_;
  const auto i = std::min(static_cast<std::size_t>(s), x_.size() - 2);
  const double u = s - static_cast<double>(i);
  const double h = table_dt_;
  const double u2 = u * u;
  return ((6 * u2 - 6 * u) * x_[i] + (-6 * u2 + 6 * u) * x_[i + 1]) / h +
         (3 * u2 - 4 * u + 1) * v_[i] + (3 * u2 - 2 * u) * v_[i + 1];
}

}  // namespace flume::sph
