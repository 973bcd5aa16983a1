#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "core/error.hpp"
#include "doctest.h"
#include "uq/statistics.hpp"

using namespace flume;
using namespace flume::uq;

TEST_SUITE("statistics") {
  TEST_CASE("type-7 quantiles") {
    const std::vector<double> x{1.0, 2.0, 4.0, 8.0, 16.0};
    CHECK(quantile_sorted(x, 0.0) == 1.0);
    CHECK(quantile_sorted(x, 1.0) == 16.0);
    CHECK(quantile_sorted(x, 0.5) == 4.0);
    // index 0.25 * 4 = 1 exactly; 0.3 * 4 = 1.2
    CHECK(quantile_sorted(x, 0.25) == 2.0);
    CHECK(quantile_sorted(x, 0.3) == doctest::Approx(2.0 + 0.2 * 2.0));
    CHECK(quantile_sorted({7.0}, 0.3) == 7.0);
  }

  TEST_CASE("boxplot statistics") {
    std::vector<double> x;
    for (int i = 1; i <= 20; ++i) x.push_back(i);
    x.push_back(100.0);
    const auto b = boxplot_stats(x);
    std::sort(x.begin(), x.end());
    CHECK(b.median == quantile_sorted(x, 0.5));
    CHECK(b.iqr == doctest::Approx(b.q3 - b.q1));
    CHECK(b.upper_fence == doctest::Approx(b.q3 + 1.5 * b.iqr));
    CHECK(b.whisker_high == 20.0);
    CHECK(b.whisker_low == 1.0);
    REQUIRE(b.outliers.size() == 1);
    CHECK(b.outliers[0] == 100.0);
    CHECK(b.max == 100.0);
  }

  TEST_CASE("Silverman bandwidth and fallbacks") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(2.0, 0.5);
    std::vector<double> x(400);
    for (auto& v : x) v = n(rng);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= x.size();
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (x.size() - 1));
    auto s = x;
    std::sort(s.begin(), s.end());
    const double iqr = quantile_sorted(s, 0.75) - quantile_sorted(s, 0.25);
    CHECK(silverman_bandwidth(x) == doctest::Approx(0.9 * std::min(sd, iqr / 1.34) * std::pow(400.0, -0.2)));
    CHECK(silverman_bandwidth({3.0, 3.0, 3.0}) == doctest::Approx(3e-3));
    // zero IQR with nonzero spread falls back to the standard deviation
    const std::vector<double> spike{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 5.0};
    CHECK(silverman_bandwidth(spike) > 0.0);
    CHECK_THROWS_AS(silverman_bandwidth({1.0}), Error);
  }

  TEST_CASE("KDE integrates to one") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 2 + rng() % 300;
      std::lognormal_distribution<double> d(std::uniform_real_distribution<double>(-2, 2)(rng), 0.6);
      std::vector<double> x(n);
      for (auto& v : x) v = d(rng);
      const auto r = kde_estimate(x);
      CHECK(std::abs(r.integral() - 1.0) <= 1e-3);
      CHECK(r.grid.size() >= 512);
      CHECK(r.grid[1] - r.grid[0] <= 0.25 * r.bandwidth * (1 + 1e-12));
      CHECK(r.grid.front() == doctest::Approx(*std::min_element(x.begin(), x.end()) - 4 * r.bandwidth));
    }
  }

  TEST_CASE("single kernel is a Gaussian") {
    const double mu = 1.7;
    const double h = 0.3;
    const auto r = kde_estimate({mu}, h);
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
      const double z = (r.grid[i] - mu) / h;
      const double g = std::exp(-0.5 * z * z) / (h * std::sqrt(2.0 * std::numbers::pi));
      CHECK(std::abs(r.density[i] - g) <= 1e-9);
    }
    CHECK(kde_density({mu}, h, mu) == doctest::Approx(1.0 / (h * std::sqrt(2.0 * std::numbers::pi))));
  }

  TEST_CASE("KDE input errors") {
    CHECK_THROWS_AS(kde_estimate({}), Error);
    CHECK_THROWS_AS(kde_estimate({1.0, 2.0}, -1.0), Error);
    CHECK_THROWS_AS(kde_estimate({1.0, NAN}), Error);
  }
}
