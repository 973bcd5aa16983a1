#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "sph/kernel.hpp"

using namespace flume;
using namespace flume::sph;

TEST_SUITE("kernel") {
  TEST_CASE("partition of unity on a uniform lattice") {
    // h = 2 dp lands at 1.0012 on the nodes; wider kernels get inside 1e-3
    for (double ratio : {2.0, 2.5, 3.0}) {
      const double dp = 0.05;
      const auto cfg = KernelConfig::from_spacing(dp, ratio);
      const int reach = static_cast<int>(std::ceil(cfg.support_radius() / dp)) + 1;
      // evaluate at a lattice node and at an off-lattice point
      for (Vec2 p : {Vec2{0.0, 0.0}, Vec2{0.3 * dp, 0.17 * dp}}) {
        double sum = 0.0;
        for (int i = -reach; i <= reach; ++i) {
          for (int j = -reach; j <= reach; ++j) {
            const Vec2 r = p - Vec2{i * dp, j * dp};
            sum += wendland_w(norm(r), cfg) * dp * dp;
          }
        }
        CHECK(std::abs(sum - 1.0) < (ratio == 2.0 ? 1.3e-3 : 1e-3));
      }
    }
  }

  TEST_CASE("continuous normalisation") {
    const KernelConfig cfg{0.07, 2.0};
    // Simpson on 2 pi r W(r) over [0, 2h]
    const int n = 2000;
    const double b = cfg.support_radius();
    const double dx = b / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double r = i * dx;
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * 2.0 * std::numbers::pi * r * wendland_w(r, cfg);
    }
    CHECK(s * dx / 3.0 == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("derivative matches central differences") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uq(0.1, 1.9);
    const KernelConfig cfg{0.1, 2.0};
    for (int k = 0; k < 20; ++k) {
      const double r = uq(rng) * cfg.h;
      const double eps = 1e-6 * cfg.h;
      const double fd = (wendland_w(r + eps, cfg) - wendland_w(r - eps, cfg)) / (2.0 * eps);
      const double an = wendland_dwdr(r, cfg);
      CHECK(std::abs(fd - an) <= 1e-6 * std::abs(an));
    }
  }

  TEST_CASE("vector gradient is dW/dr along r and matches the hot-loop factor") {
    const KernelConfig cfg{0.1, 2.0};
    const Vec2 r{0.061, -0.043};
    const Vec2 g = wendland_grad_w(r, cfg);
    const double d = wendland_dwdr(norm(r), cfg);
    CHECK(g.x == doctest::Approx(d * r.x / norm(r)).epsilon(1e-14));
    CHECK(g.z == doctest::Approx(d * r.z / norm(r)).epsilon(1e-14));
    const double f = wendland_grad_factor(norm2(r), 1.0 / (cfg.h * cfg.h), 5.0 * cfg.alpha_d() / (cfg.h * cfg.h));
    CHECK(f * r.x == doctest::Approx(g.x).epsilon(1e-12));
    CHECK(wendland_grad_w(Vec2{}, cfg) == Vec2{});
  }

  TEST_CASE("compact support and shape") {
    const KernelConfig cfg{0.1, 2.0};
    CHECK(wendland_w(0.2, cfg) == 0.0);
    CHECK(wendland_w(0.25, cfg) == 0.0);
    CHECK(wendland_dwdr(0.2, cfg) == 0.0);
    CHECK(wendland_w(0.0, cfg) == doctest::Approx(7.0 / (4.0 * std::numbers::pi * 0.01)));
    CHECK(wendland_dwdr(0.0, cfg) == 0.0);
    double prev = wendland_w(0.0, cfg);
    for (int i = 1; i <= 40; ++i) {
      const double w = wendland_w(i * 0.005, cfg);
      CHECK(w <= prev);
      CHECK(wendland_dwdr(i * 0.005, cfg) <= 0.0);
      prev = w;
    }
  }

  TEST_CASE("smoothing length from spacing") {
    const auto cfg = KernelConfig::from_spacing(0.05);
    CHECK(cfg.h == doctest::Approx(0.1));
    CHECK(cfg.support_radius() == doctest::Approx(0.2));
  }
}
