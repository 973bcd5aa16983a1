#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace flume::pipeline {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

struct ManifestFile {
  std::string path;  ///< relative to the manifest directory, '/' separated
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct StageRecord {
  std::string name;
  double seconds = 0.0;
  std::size_t particles = 0;
  std::size_t fluid_particles = 0;
};

struct ScenarioRecord {
  double wave_height = 0.0;
  double dp = 0.0;
  std::string run;  ///< run directory name, empty for the manifest's own dir
};

struct RunManifest {
  std::string kind;  ///< simulate | forces | uq | report
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<ScenarioRecord> scenarios;
  std::vector<StageRecord> stages;
  std::vector<ManifestFile> files;
};

inline constexpr const char* kManifestName = "manifest.json";

/// Checksum every regular file below dir (except the manifest itself) in
/// sorted path order.
std::vector<ManifestFile> scan_files(const std::filesystem::path& dir);

void write_manifest(const std::filesystem::path& dir, RunManifest manifest);
RunManifest read_manifest(const std::filesystem::path& dir);

/// True when every listed file exists with the recorded checksum.
bool verify_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

}  // namespace flume::pipeline
