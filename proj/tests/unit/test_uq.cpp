#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <set>

#include "core/error.hpp"
#include "doctest.h"
#include "uq/lhs.hpp"
#include "uq/propagate.hpp"
#include "uq/random_variable.hpp"

using namespace flume;
using namespace flume::uq;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

// closed-form CDFs written out here rather than taken from the library
double oracle_cdf(const RandomVariableSpec& s, double x) {
  switch (s.distribution) {
    case Distribution::Normal:
      return 0.5 * std::erfc(-(x - s.mean) / (s.sd * std::sqrt(2.0)));
    case Distribution::Lognormal: {
      const double s2 = std::log1p((s.sd / s.mean) * (s.sd / s.mean));
      const double mu = std::log(s.mean) - 0.5 * s2;
      return 0.5 * std::erfc(-(std::log(x) - mu) / std::sqrt(2.0 * s2));
    }
    case Distribution::Uniform:
      return (x - s.min) / (s.max - s.min);
    case Distribution::Beta: {
      // only alpha = 2, beta = 1 is used in the random configurations
      const double y = (x - s.min) / (s.max - s.min);
      return y * y;
    }
    default:
      return 0.0;
  }
}

RandomVariableSpec random_spec(std::mt19937_64& rng, int idx) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::string name = "x" + std::to_string(idx);
  switch (rng() % 4) {
    case 0:
      return RandomVariableSpec::normal(name, 10.0 * u(rng) - 5.0, 0.1 + 3.0 * u(rng));
    case 1:
      return RandomVariableSpec::lognormal(name, 0.5 + 2.0 * u(rng), 0.05 + 0.5 * u(rng));
    case 2: {
      const double a = 4.0 * u(rng) - 2.0;
      return RandomVariableSpec::uniform(name, a, a + 0.1 + 5.0 * u(rng));
    }
    default: {
      const double a = u(rng);
      return RandomVariableSpec::beta_dist(name, 2.0, 1.0, a, a + 1.0 + u(rng));
    }
  }
}

forces::ForceRecord ramp_record(double peak) {
  forces::ForceRecord r;
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.01 * i;
    r.times.push_back(t);
    r.force.push_back(peak * std::exp(-std::pow((t - 1.0) / 0.15, 2)));
  }
  return r;
}

}  // namespace

TEST_SUITE("uq") {
  TEST_CASE("inverse CDF agrees with closed forms") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 40; ++k) {
      const auto s = random_spec(rng, k);
      for (double u : {1e-6, 0.01, 0.2, 0.5, 0.77, 0.999}) {
        const double x = inverse_cdf(s, u);
        CHECK(oracle_cdf(s, x) == doctest::Approx(u).epsilon(1e-9));
        CHECK(cdf(s, x) == doctest::Approx(u).epsilon(1e-9));
      }
    }
    CHECK(code_of([] { inverse_cdf(RandomVariableSpec::normal("a", 0, 1), 0.0); }) == ErrorCode::Domain);
    CHECK(code_of([] { inverse_cdf(RandomVariableSpec::normal("a", 0, 1), 1.0); }) == ErrorCode::Domain);
    CHECK(inverse_cdf(RandomVariableSpec::constant("c", 2.5), 0.3) == 2.5);
  }

  TEST_CASE("spec validation") {
    CHECK(code_of([] { RandomVariableSpec::normal("a", 0, -1).validate(); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { RandomVariableSpec::uniform("a", 2, 1).validate(); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { RandomVariableSpec::lognormal("a", -1, 1).validate(); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { RandomVariableSpec::beta_dist("a", 0, 1, 0, 1).validate(); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { distribution_from_string("cauchy"); }) == ErrorCode::InvalidSpec);
  }

  TEST_CASE("LHS stratification holds for random configurations") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + rng() % 8;
      const std::size_t q = 1 + rng() % 1000;
      std::vector<RandomVariableSpec> specs;
      for (std::size_t j = 0; j < n; ++j) specs.push_back(random_spec(rng, static_cast<int>(j)));
      const auto m = lhs_sample(specs, q, rng());
      REQUIRE(m.rows() == q);
      REQUIRE(m.columns() == n);
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> bins;
        for (std::size_t i = 0; i < q; ++i) {
          const std::size_t b = m.bins[i][j];
          bins.push_back(b);
          const double p = oracle_cdf(specs[j], m.values[i][j]);
          // one sample per equal-probability stratum
          CHECK(p >= static_cast<double>(b) / q - 1e-9);
          CHECK(p <= static_cast<double>(b + 1) / q + 1e-9);
        }
        std::sort(bins.begin(), bins.end());
        for (std::size_t i = 0; i < q; ++i) CHECK(bins[i] == i);
      }
    }
  }

  TEST_CASE("LHS is bit-exact for a given seed") {
    const auto specs = default_structural_specs();
    const auto a = lhs_sample(specs, 300, 42);
    const auto b = lhs_sample(specs, 300, 42);
    const auto c = lhs_sample(specs, 300, 43);
    CHECK(a.values == b.values);
    CHECK(a.bins == b.bins);
    CHECK(a.values != c.values);
  }

  TEST_CASE("bounded strata have the expected width") {
    const auto s = RandomVariableSpec::uniform("u", 0.4, 1.6);
    CHECK(interval_width(s, 600) == doctest::Approx(1.2 / 600.0).epsilon(1e-15));
    const auto m = lhs_sample({s}, 600, 9);
    for (std::size_t i = 0; i < 600; ++i) {
      const double lo = 0.4 + interval_width(s, 600) * m.bins[i][0];
      CHECK(m.values[i][0] >= lo - 1e-12);
      CHECK(m.values[i][0] <= lo + interval_width(s, 600) + 1e-12);
    }
    CHECK(code_of([] { interval_width(RandomVariableSpec::normal("n", 0, 1), 10); }) == ErrorCode::InvalidSpec);
  }

  TEST_CASE("floors are respected") {
    auto s = RandomVariableSpec::normal("n", 3.0, 1.0);
    s.floor = 0.0;
    const auto m = lhs_sample({s}, 500, 3);
    for (const auto& row : m.values) CHECK(row[0] > 0.0);
    // a stratum lying wholly below the floor cannot be redrawn
    auto low = RandomVariableSpec::normal("n", 0.5, 1.0);
    low.floor = 0.0;
    CHECK_THROWS_AS(lhs_sample({low}, 500, 3), Error);
  }

  TEST_CASE("fisher-yates and stratified levels") {
    std::mt19937_64 rng(1);
    auto p = fisher_yates(97, rng);
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == i);
    for (std::size_t q : {600u, 601u, 17u}) {
      const auto lv = stratified_levels(q, 6, 7);
      REQUIRE(lv.size() == q);
      std::vector<std::size_t> count(6, 0);
      for (auto l : lv) count[l]++;
      for (auto c : count) {
        CHECK(c >= q / 6);
        CHECK(c <= (q + 5) / 6);
      }
    }
  }

  TEST_CASE("spec file round trip") {
    const auto dir = fs::temp_directory_path() / "flume_uq_spec_test";
    fs::create_directories(dir);
    auto specs = default_structural_specs();
    specs.push_back(RandomVariableSpec::beta_dist("load_factor", 5.0, 2.0, 0.4, 1.6));
    write_spec_file(dir / "rv.ini", specs);
    const auto back = read_spec_file(dir / "rv.ini");
    REQUIRE(back.size() == specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
      CHECK(back[i].name == specs[i].name);
      CHECK(back[i].distribution == specs[i].distribution);
      CHECK(back[i].mean == specs[i].mean);
      CHECK(back[i].sd == specs[i].sd);
      CHECK(back[i].floor == specs[i].floor);
    }
    CHECK(back.back().alpha == 5.0);
    CHECK(code_of([] { parse_spec_text("[a]\ndistribution = normal\nmean = 1\nsd = 1\ncolour = red\n"); }) ==
          ErrorCode::InvalidSpec);
    CHECK(code_of([] { read_spec_file("/nonexistent/rv.ini"); }) == ErrorCode::MissingInput);
    fs::remove_all(dir);
  }

  TEST_CASE("row inputs map named columns") {
    std::vector<RandomVariableSpec> specs = {RandomVariableSpec::constant("youngs_modulus", 150e9),
                                             RandomVariableSpec::constant("load_factor", 1.3)};
    const auto m = lhs_sample(specs, 4, 1);
    structural::StructuralParams p;
    double lf = 0.0;
    row_inputs(m, 2, p, lf);
    CHECK(p.youngs_modulus == 150e9);
    CHECK(p.yield_strength == structural::StructuralParams{}.yield_strength);
    CHECK(lf == 1.3);
    const auto bad = lhs_sample({RandomVariableSpec::constant("colour", 1.0)}, 2, 1);
    CHECK(code_of([&] { row_inputs(bad, 0, p, lf); }) == ErrorCode::InvalidSpec);
  }

  TEST_CASE("elastic rows scale linearly with the load factor") {
    PropagationConfig cfg;
    const auto rec = ramp_record(50.0);
    const structural::StructuralParams p;
    const auto a = evaluate_row(p, 1.0, rec, cfg);
    const auto b = evaluate_row(p, 2.0, rec, cfg);
    REQUIRE_FALSE(b.yielded);
    CHECK(b.rmsa == doctest::Approx(2.0 * a.rmsa).epsilon(1e-9));
    CHECK(a.period > 0.0);
  }

  TEST_CASE("propagate keeps row order and records failures") {
    LoadLibrary lib;
    lib.wave_heights = {0.4, 0.5};
    lib.records = {ramp_record(30.0), ramp_record(60.0)};
    auto specs = default_structural_specs();
    const auto m = lhs_sample(specs, 20, 11);
    std::vector<std::size_t> hi(20);
    for (std::size_t i = 0; i < 20; ++i) hi[i] = i % 2;
    PropagationConfig cfg;
    cfg.jobs = 2;
    const auto t = propagate(m, hi, lib, cfg);
    REQUIRE(t.rows.size() == 20);
    for (std::size_t i = 0; i < 20; ++i) {
      CHECK(t.rows[i].sample_id == i);
      CHECK(t.rows[i].wave_height == lib.wave_heights[i % 2]);
    }
    cfg.jobs = 1;
    const auto serial = propagate(m, hi, lib, cfg);
    for (std::size_t i = 0; i < 20; ++i) CHECK(serial.rows[i].rmsa == t.rows[i].rmsa);

    // a zero Young's modulus cannot build a frame
    auto zero = lhs_sample({RandomVariableSpec::constant("youngs_modulus", 0.0)}, 3, 1);
    const auto f = propagate(zero, {0, 1, 0}, lib, cfg);
    CHECK(f.failures == 3);
    CHECK(f.failure_fraction() == 1.0);
    CHECK(f.rows[0].failed);
  }

  TEST_CASE("thread cap from the environment") {
    ::setenv("FLUME_UQ_THREADS", "2", 1);
    CHECK(effective_jobs(8) == 2);
    CHECK(effective_jobs(1) == 1);
    ::unsetenv("FLUME_UQ_THREADS");
    CHECK(effective_jobs(0) == 1);
    CHECK(effective_jobs(3) == 3);
  }
}
