#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "core/error.hpp"
#include "doctest.h"
#include "structural/frame.hpp"

using namespace flume;
using namespace flume::structural;

namespace {

ShearFrameModel sdof(double m, double k, double vy = 1e12, double zeta = 0.0) {
  ShearFrameModel s;
  s.story_masses = {m};
  s.story_stiffness = {k};
  s.story_yield_shear = {vy};
  s.post_yield_ratio = 0.02;
  s.damping_ratio = zeta;
  return s;
}

double free_vibration_error(double dt_fraction) {
  const double m = 2.0;
  const double k = 800.0;
  const double w = std::sqrt(k / m);
  const double T = 2.0 * std::numbers::pi / w;
  const double dt = T * dt_fraction;
  const auto steps = static_cast<std::size_t>(std::llround(10.0 * T / dt)) + 1;
  ResponseOptions o;
  o.initial_displacement = {0.01};
  const auto r = newmark_response(sdof(m, k), {std::vector<double>(steps, 0.0)}, dt, o);
  double err = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    err = std::max(err, std::abs(r.displacement_history[i][0] - 0.01 * std::cos(w * dt * static_cast<double>(i))));
  }
  return err / 0.01;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_SUITE("structural") {
  TEST_CASE("undamped SDOF free vibration matches the closed form") {
    const double e1 = free_vibration_error(1.0 / 1000.0);
    CHECK(e1 < 1e-3);
    const double coarse = free_vibration_error(1.0 / 100.0);
    const double fine = free_vibration_error(1.0 / 200.0);
    CHECK(coarse / fine >= 3.5);
  }

  TEST_CASE("two-storey modal frequencies") {
    ShearFrameModel m;
    m.story_masses = {3.0, 3.0};
    m.story_stiffness = {1200.0, 1200.0};
    m.story_yield_shear = {1e9, 1e9};
    const auto w = natural_frequencies(m);
    REQUIRE(w.size() == 2);
    const double r = 1200.0 / 3.0;
    CHECK(w[0] == doctest::Approx(std::sqrt(r * (3.0 - std::sqrt(5.0)) / 2.0)).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(std::sqrt(r * (3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-12));
  }

  TEST_CASE("default frame mapping") {
    const auto m = build_frame(StructuralParams{});
    CHECK(m.n_stories() == 2);
    const FrameGeometry g;
    const double weight = 4 * 0.25 * 173.4 + 2 * 0.4 * 133.554 + 2 * 0.4 * 133.554;
    CHECK(m.story_masses[0] == doctest::Approx(weight / 9.81));
    const double k = 4 * 12 * 200e9 * (g.c_i * 173.4 * 173.4) / std::pow(0.25, 3);
    CHECK(m.story_stiffness[0] == doctest::Approx(k));
    CHECK(m.story_yield_shear[0] == doctest::Approx(413.685e6 * g.z_cfg));
    const double t1 = fundamental_period(m);
    CHECK(t1 > 0.1);
    CHECK(t1 < 1.0);
    // stiffer columns shorten the period
    StructuralParams stiff;
    stiff.youngs_modulus = 240e9;
    CHECK(fundamental_period(build_frame(stiff)) < t1);
    StructuralParams bad;
    bad.youngs_modulus = -1.0;
    CHECK(code_of([&] { build_frame(bad); }) == ErrorCode::InvalidParams);
  }

  TEST_CASE("RMS helpers") {
    CHECK(rms(std::vector<double>(1000, 3.0)) == 3.0);
    CHECK(rms(std::vector<double>(64, -0.5)) == 0.5);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0.0, 2.0);
    std::vector<double> a(5000);
    for (auto& v : a) v = n(rng);
    long double s = 0.0L;
    for (double v : a) s += static_cast<long double>(v) * v;
    const double oracle = static_cast<double>(std::sqrt(s / a.size()));
    CHECK(std::abs(rms(a) - oracle) <= 1e-12 * oracle);
    CHECK(code_of([] { rms({}); }) == ErrorCode::EmptyHistory);

    std::vector<std::vector<double>> d{{0.1, -0.3}, {0.2, 0.1}, {-0.4, 0.0}};
    std::vector<std::vector<double>> acc{{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}};
    const auto e = extract_edp(d, acc);
    CHECK(e.rmsa[0] == 1.0);
    CHECK(e.rmsa[1] == 2.0);
    CHECK(e.peak_displacement[0] == 0.4);
    CHECK(e.peak_displacement[1] == 0.3);
    CHECK(e.rmsa_envelope == 2.0);
    CHECK(code_of([] { extract_edp({}, {}); }) == ErrorCode::EmptyHistory);
  }

  TEST_CASE("static load settles at F / k and elastic response is linear") {
    const auto m = sdof(5.0, 2000.0, 1e9, 0.05);
    const double T = fundamental_period(m);
    const double dt = T / 50.0;
    const std::size_t steps = 5000;
    const auto r1 = newmark_response(m, {std::vector<double>(steps, 10.0)}, dt);
    CHECK(r1.displacement_history.back()[0] == doctest::Approx(10.0 / 2000.0).epsilon(1e-4));
    CHECK_FALSE(r1.yielded);
    std::vector<double> pulse(400, 0.0);
    for (std::size_t i = 10; i < 60; ++i) pulse[i] = 50.0 * std::sin(0.1 * static_cast<double>(i));
    std::vector<double> pulse2 = pulse;
    for (auto& v : pulse2) v *= 2.0;
    const auto a = newmark_response(m, {pulse}, dt);
    const auto b = newmark_response(m, {pulse2}, dt);
    CHECK(b.rmsa_envelope == doctest::Approx(2.0 * a.rmsa_envelope).epsilon(1e-9));
    CHECK(b.peak_displacement_envelope == doctest::Approx(2.0 * a.peak_displacement_envelope).epsilon(1e-9));
  }

  TEST_CASE("yielding and energy balance") {
    const auto m = sdof(5.0, 2000.0, 20.0, 0.02);
    const double dt = fundamental_period(m) / 100.0;
    std::vector<double> load(3000, 0.0);
    for (std::size_t i = 0; i < 300; ++i) load[i] = 60.0 * std::sin(0.05 * static_cast<double>(i));
    EnergyTrace energy;
    ResponseOptions o;
    o.energy = &energy;
    const auto r = newmark_response(m, {load}, dt, o);
    CHECK(r.yielded);
    const std::size_t last = energy.input.size() - 1;
    const double out = energy.kinetic[last] + energy.recoverable[last] + energy.damping[last] + energy.hysteretic[last];
    CHECK(energy.hysteretic[last] > 0.0);
    CHECK(out == doctest::Approx(energy.input[last]).epsilon(1e-2));
  }

  TEST_CASE("input validation") {
    const auto m = sdof(5.0, 2000.0);
    const double T = fundamental_period(m);
    CHECK(code_of([&] { newmark_response(m, {std::vector<double>(10, 0.0)}, T / 10.0); }) ==
          ErrorCode::TimestepTooCoarse);
    CHECK(code_of([&] { newmark_response(m, {{}, {}}, T / 50.0); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([&] { newmark_response(m, {std::vector<double>{}}, T / 50.0); }) == ErrorCode::EmptyHistory);
    auto bad = m;
    bad.story_masses = {0.0};
    CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidParams);
  }
}
