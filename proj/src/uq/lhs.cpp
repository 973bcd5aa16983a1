#include "uq/lhs.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace flume::uq {
namespace {

/// Uniform double in (0, 1) from the top 53 bits of one engine draw.
double open_unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

constexpr int kMaxRedraws = 10000;

}  // namespace

std::size_t SampleMatrix::find(const std::string& name) const noexcept {
  for (std::size_t j = 0; j < specs.size(); ++j) {
    if (specs[j].name == name) return j;
  }
  return npos;
}

std::vector<std::size_t> fisher_yates(std::size_t q, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(q);
  for (std::size_t i = 0; i < q; ++i) perm[i] = i;
  for (std::size_t i = q; i > 1; --i) {
    // Unbiased index in [0, i) by rejection.
    const std::uint64_t bound = i;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    std::swap(perm[i - 1], perm[static_cast<std::size_t>(r % bound)]);
  }
  return perm;
}

SampleMatrix lhs_sample(const std::vector<RandomVariableSpec>& specs, std::size_t q, std::uint64_t seed) {
  if (q < 1) fail(ErrorCode::InvalidSpec, "sample count must be at least 1");
  if (specs.empty()) fail(ErrorCode::InvalidSpec, "at least one variable is required");
  for (const auto& s : specs) s.validate();

  SampleMatrix m;
  m.specs = specs;
  m.seed = seed;
  m.values.assign(q, std::vector<double>(specs.size()));
  m.bins.assign(q, std::vector<std::size_t>(specs.size()));
  std::mt19937_64 rng(seed);
  const double width = 1.0 / static_cast<double>(q);

  for (std::size_t j = 0; j < specs.size(); ++j) {
    const auto& spec = specs[j];
    const std::vector<std::size_t> perm = fisher_yates(q, rng);
    for (std::size_t i = 0; i < q; ++i) {
      const std::size_t b = perm[i];
      double value = 0.0;
      int tries = 0;
      do {
        if (++tries > kMaxRedraws) {
          fail(ErrorCode::InvalidSpec, "variable '" + spec.name + "': stratum " + std::to_string(b) +
                                           " lies entirely at or below the floor");
        }
        const double u = (static_cast<double>(b) + open_unit(rng)) * width;
        value = inverse_cdf(spec, std::clamp(u, 0x1.0p-60, 1.0 - 0x1.0p-53));
      } while (spec.floor && spec.distribution != Distribution::Constant && value <= *spec.floor);
      m.values[i][j] = value;
      m.bins[i][j] = b;
    }
  }
  return m;
}

std::vector<std::size_t> stratified_levels(std::size_t q, std::size_t levels, std::uint64_t seed) {
  if (levels == 0) fail(ErrorCode::InvalidArgument, "at least one level is required");
  const auto m = lhs_sample({RandomVariableSpec::uniform("level", 0.0, 1.0)}, q, seed);
  std::vector<std::size_t> out(q);
  for (std::size_t i = 0; i < q; ++i) {
    // Bin index, not the jittered value, so the split is exact.
    out[i] = m.bins[i][0] * levels / q;
  }
  return out;
}

}  // namespace flume::uq
