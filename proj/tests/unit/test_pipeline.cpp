#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "doctest.h"
#include "flume/scenario.hpp"
#include "forces/forces.hpp"
#include "pipeline/manifest.hpp"
#include "pipeline/stages.hpp"

using namespace flume;
using namespace flume::pipeline;
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

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// a library made by hand: scenario.ini plus a Gaussian force pulse per height
void fake_library(const fs::path& lib, const std::vector<double>& heights) {
  for (double h : heights) {
    const auto scn = setup::build_scenario({{"wave.height", csv::num(h)}, {"numerics.dp", "0.1"}});
    const fs::path dir = lib / run_key(scn);
    fs::create_directories(dir / "forces");
    setup::write_config_file(dir / "scenario.ini", setup::to_config_map(scn));
    forces::ForceRecord r;
    for (int i = 0; i <= 300; ++i) {
      r.times.push_back(0.01 * i);
      r.force.push_back(100.0 * h * std::exp(-std::pow((0.01 * i - 1.5) / 0.2, 2)));
    }
    forces::write_force_csv(dir / "forces" / "sph.csv", r);
  }
}

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  }

  TEST_CASE("manifest write, read and verify") {
    TempDir d("flume_manifest_test");
    {
      std::ofstream(d.path / "a.txt") << "hello";
      fs::create_directories(d.path / "sub");
      std::ofstream(d.path / "sub" / "b.txt") << "world";
    }
    RunManifest m;
    m.kind = "simulate";
    m.config_hash = "x";
    m.seed = 7;
    m.scenarios.push_back({0.4, 0.1, ""});
    write_manifest(d.path, m);
    const auto back = read_manifest(d.path);
    CHECK(back.kind == "simulate");
    CHECK(back.seed == 7);
    REQUIRE(back.files.size() == 2);
    CHECK(back.files[0].path == "a.txt");
    CHECK(back.files[1].path == "sub/b.txt");
    CHECK(back.files[0].sha256 == sha256_hex("hello"));
    CHECK(verify_manifest(d.path, back));
    std::ofstream(d.path / "a.txt") << "tampered";
    CHECK_FALSE(verify_manifest(d.path, back));
    CHECK(code_of([] { read_manifest("/nonexistent/run"); }) == ErrorCode::MissingInput);
  }

  TEST_CASE("config hash tracks physics") {
    const auto a = setup::build_scenario({{"wave.height", "0.4"}, {"numerics.dp", "0.1"}});
    const auto b = setup::build_scenario({{"wave.height", "0.4"}, {"numerics.dp", "0.1"}});
    const auto c = setup::build_scenario({{"wave.height", "0.5"}, {"numerics.dp", "0.1"}});
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) != config_hash(c));
    CHECK(run_key(a).rfind("H0.40_dp0.100_", 0) == 0);
  }

  TEST_CASE("uq over a synthetic library and report idempotency") {
    TempDir d("flume_uq_pipeline_test");
    fake_library(d.path / "lib", {0.4, 0.5, 0.6});
    const auto lib = load_library(d.path / "lib", {});
    CHECK(lib.wave_heights == std::vector<double>{0.4, 0.5, 0.6});
    CHECK(code_of([&] { load_library(d.path / "lib", {0.9}); }) == ErrorCode::MissingInput);

    UqOptions o;
    o.library = d.path / "lib";
    o.out_dir = d.path / "uq";
    o.q = 30;
    o.seed = 5;
    const auto r = run_uq(o);
    CHECK(r.rows == 30);
    CHECK(r.failures == 0);
    CHECK_FALSE(r.partial_failure);
    const csv::Table edp = csv::read(d.path / "uq" / "edp.csv");
    CHECK(edp.rows.size() == 30);
    const auto wh = edp.numbers("wave_height");
    for (double h : {0.4, 0.5, 0.6}) CHECK(std::count(wh.begin(), wh.end(), h) == 10);
    CHECK(verify_manifest(d.path / "uq", read_manifest(d.path / "uq")));

    // same seed, same bytes
    const std::string first = slurp(d.path / "uq" / "edp.csv");
    run_uq(o);
    CHECK(slurp(d.path / "uq" / "edp.csv") == first);

    const auto files = run_report(d.path / "uq", d.path / "rep1");
    CHECK_FALSE(files.empty());
    run_report(d.path / "uq", d.path / "rep2");
    for (const auto& f : files) CHECK(slurp(d.path / "rep1" / f) == slurp(d.path / "rep2" / f));
    CHECK(code_of([&] { run_report(d.path / "lib", d.path / "rep3"); }) == ErrorCode::MissingInput);
  }

  TEST_CASE("short simulation is cached by config hash") {
    TempDir d("flume_sim_pipeline_test");
    const auto scn = setup::build_scenario({{"wave.height", "0.4"}, {"numerics.dp", "0.1"}, {"run.duration", "0.2"}});
    SimulateOptions so;
    so.library = d.path / "lib";
    const auto a = run_simulate(scn, so);
    CHECK_FALSE(a.cached);
    CHECK(a.fluid_particles > 0);
    CHECK(fs::exists(a.run_dir / "forces" / "sph.csv"));
    CHECK(fs::exists(a.run_dir / "structure_flow.csv"));
    const auto b = run_simulate(scn, so);
    CHECK(b.cached);
    CHECK(b.run_dir == a.run_dir);

    ForcesOptions fo;
    fo.run_dirs = {a.run_dir};
    fo.out_dir = d.path / "forces";
    const auto rows = run_forces(fo);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].wave_height == 0.4);
    CHECK(fs::exists(d.path / "forces" / "forces_summary.csv"));
    CHECK(fs::exists(d.path / "forces" / "froude.csv"));
  }
}
