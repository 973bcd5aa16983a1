#include "pipeline/manifest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <memory>
#include "json.hpp"

#include "core/error.hpp"

namespace flume::pipeline {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      fail(ErrorCode::Internal, "SHA-256 initialisation failed");
    }
  }
  void update(const void* data, std::size_t n) {
    if (EVP_DigestUpdate(ctx_.get(), data, n) != 1) fail(ErrorCode::Internal, "SHA-256 update failed");
  }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), md.data(), &len) != 1) fail(ErrorCode::Internal, "SHA-256 final failed");
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out.push_back(digits[md[i] >> 4]);
      out.push_back(digits[md[i] & 15]);
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::Io, "cannot read " + path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (is) {
    is.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(is.gcount()));
  }
  return h.hex();
}

std::vector<ManifestFile> scan_files(const fs::path& dir) {
  std::vector<ManifestFile> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string rel = fs::relative(entry.path(), dir).generic_string();
    if (rel == kManifestName) continue;
    files.push_back(ManifestFile{rel, sha256_file(entry.path()), entry.file_size()});
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  return files;
}

void write_manifest(const fs::path& dir, RunManifest m) {
  m.files = scan_files(dir);
  json j;
  j["kind"] = m.kind;
  j["config_hash"] = m.config_hash;
  j["seed"] = m.seed;
  j["scenarios"] = json::array();
  for (const auto& s : m.scenarios) {
    j["scenarios"].push_back({{"wave_height", s.wave_height}, {"dp", s.dp}, {"run", s.run}});
  }
  j["stages"] = json::array();
  for (const auto& s : m.stages) {
    j["stages"].push_back({{"name", s.name},
                           {"seconds", s.seconds},
                           {"particles", s.particles},
                           {"fluid_particles", s.fluid_particles}});
  }
  j["files"] = json::array();
  for (const auto& f : m.files) j["files"].push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  std::ofstream os(dir / kManifestName);
  if (!os) fail(ErrorCode::Io, "cannot write manifest in " + dir.string());
  os << j.dump(2) << '\n';
}

RunManifest read_manifest(const fs::path& dir) {
  std::ifstream is(dir / kManifestName);
  if (!is) fail(ErrorCode::MissingInput, "no manifest in " + dir.string());
  RunManifest m;
  try {
    const json j = json::parse(is);
    m.kind = j.at("kind").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& s : j.at("scenarios")) {
      m.scenarios.push_back({s.at("wave_height").get<double>(), s.at("dp").get<double>(),
                             s.at("run").get<std::string>()});
    }
    for (const auto& s : j.at("stages")) {
      m.stages.push_back({s.at("name").get<std::string>(), s.at("seconds").get<double>(),
                          s.at("particles").get<std::size_t>(), s.at("fluid_particles").get<std::size_t>()});
    }
    for (const auto& f : j.at("files")) {
      m.files.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>(),
                         f.at("bytes").get<std::uintmax_t>()});
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::MissingInput, "malformed manifest in " + dir.string() + ": " + e.what());
  }
  return m;
}

bool verify_manifest(const fs::path& dir, const RunManifest& m) {
  for (const auto& f : m.files) {
    const fs::path p = dir / f.path;
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) return false;
    if (sha256_file(p) != f.sha256) return false;
  }
  return true;
}

}  // namespace flume::pipeline
