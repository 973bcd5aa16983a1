#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "flume/gauges.hpp"

using namespace flume;
using namespace flume::setup;
namespace fs = std::filesystem;

namespace {

sph::SimState column(double x, double dp, int layers) {
  sph::SimState st;
  for (int j = 0; j < layers; ++j) {
    sph::Particle p;
    p.position = {x, (j + 0.5) * dp};
    p.mass = 1000.0 * dp * dp;
    st.particles.push_back(p);
  }
  return st;
}

}  // namespace

TEST_SUITE("gauges") {
  TEST_CASE("surface of a resting column is the still-water level") {
    const double dp = 0.05;
    const auto st = column(3.0, dp, 15);
    CHECK(sample_gauge(st, 3.0, 2 * dp, dp, 0.75) == doctest::Approx(0.0).scale(1.0));
    CHECK(sample_gauge(st, 3.05, 2 * dp, dp, 0.75) == doctest::Approx(0.0).scale(1.0));
    // outside the column
    CHECK(sample_gauge(st, 3.2, 2 * dp, dp, 0.75) == -0.75);
  }

  TEST_CASE("raised column and inactive particles") {
    const double dp = 0.05;
    auto st = column(1.0, dp, 23);
    CHECK(sample_gauge(st, 1.0, 2 * dp, dp, 0.75) == doctest::Approx(23 * dp - 0.75));
    st.particles.back().active = false;
    CHECK(sample_gauge(st, 1.0, 2 * dp, dp, 0.75) == doctest::Approx(22 * dp - 0.75));
    st.particles.back().active = true;
    st.particles.back().kind = sph::ParticleKind::WallFixed;
    CHECK(sample_gauge(st, 1.0, 2 * dp, dp, 0.75) == doctest::Approx(22 * dp - 0.75));
  }

  TEST_CASE("trace peak and CSV round trip") {
    GaugeTrace t;
    t.id = "WG1";
    t.x_position = 4.0;
    t.times = {0.0, 0.5, 1.0, 1.5};
    t.eta = {-0.75, 0.1, 0.38, 0.05};
    CHECK(t.is_dry(0));
    CHECK_FALSE(t.is_dry(1));
    CHECK(t.peak() == 0.38);
    CHECK(t.peak_time() == 1.0);
    const auto path = fs::temp_directory_path() / "flume_trace_test.csv";
    write_trace_csv(path, t);
    const auto back = read_trace_csv(path);
    CHECK(back.times == t.times);
    CHECK(back.eta == t.eta);
    fs::remove(path);
    GaugeTrace empty;
    CHECK(std::isnan(empty.peak()));
  }
}
