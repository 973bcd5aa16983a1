#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "doctest.h"
#include "flume/catalogue.hpp"
#include "sph/wavemaker.hpp"

using namespace flume;
using namespace flume::sph;

TEST_SUITE("wavemaker") {
  TEST_CASE("catalogue rows agree with Rayleigh theory") {
    const auto published = setup::scenario_catalogue();
    const auto theory = setup::theoretical_catalogue();
    REQUIRE(published.size() == 6);
    for (std::size_t i = 0; i < published.size(); ++i) {
      const double H = published[i].wave_height;
      // independent evaluation of c = sqrt(g (H + d)) and lambda = 2 pi / k
      const double c = std::sqrt(9.81 * (H + 0.75));
      const double k = std::sqrt(3.0 * H / (4.0 * 0.75 * 0.75 * (H + 0.75)));
      CHECK(theory[i].celerity == doctest::Approx(c).epsilon(1e-14));
      CHECK(theory[i].wavelength == doctest::Approx(2.0 * std::numbers::pi / k).epsilon(1e-14));
      CHECK(published[i].celerity == doctest::Approx(c).epsilon(1e-5));
      CHECK(published[i].wavelength == doctest::Approx(theory[i].wavelength).epsilon(1e-5));
    }
  }

  TEST_CASE("paddle trajectory") {
    const RayleighPiston piston({0.4, 0.75, 9.81, 0.0});
    CHECK(piston.displacement(0.0) == 0.0);
    CHECK(piston.velocity(0.0) == 0.0);
    // the crest leaves the paddle at mid-ramp, where the surface is at H
    const double t_mid = 0.5 * piston.ramp();
    const double x_mid = piston.displacement(t_mid);
    CHECK(x_mid == doctest::Approx(0.5 * piston.stroke()).epsilon(2e-3));
    CHECK(piston.surface_profile(x_mid, t_mid) == doctest::Approx(0.4).epsilon(1e-3));
    // the full stroke is covered once the crest has passed
    CHECK(piston.displacement(piston.motion_end()) == doctest::Approx(piston.stroke()).epsilon(5e-3));
    CHECK(piston.velocity(piston.motion_end() + 1.0) == 0.0);
    CHECK(piston.displacement(piston.motion_end() + 1.0) == piston.displacement(piston.motion_end()));
    // velocity is the derivative of the displacement and obeys dx/dt = c eta / (d + eta)
    for (double t : {0.3 * piston.ramp(), t_mid, 0.7 * piston.ramp()}) {
      const double e = 1e-5;
      const double fd = (piston.displacement(t + e) - piston.displacement(t - e)) / (2 * e);
      CHECK(piston.velocity(t) == doctest::Approx(fd).epsilon(1e-6));
      const double x = piston.displacement(t);
      const double eta = piston.surface_profile(x, t);
      CHECK(piston.velocity(t) == doctest::Approx(piston.celerity() * eta / (0.75 + eta)).epsilon(1e-6));
    }
    // peak paddle speed is c H / (d + H)
    CHECK(piston.velocity(t_mid) == doctest::Approx(piston.celerity() * 0.4 / 1.15).epsilon(1e-3));
  }

  TEST_CASE("invalid wave parameters are refused") {
    CHECK_THROWS_AS(RayleighPiston({0.0, 0.75, 9.81, 0.0}), Error);
    CHECK_THROWS_AS(RayleighPiston({0.4, -1.0, 9.81, 0.0}), Error);
  }
}
