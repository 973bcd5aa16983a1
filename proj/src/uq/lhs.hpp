#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "uq/random_variable.hpp"

namespace flume::uq {

struct SampleMatrix {
  std::vector<RandomVariableSpec> specs;
  /// values[row][column]
  std::vector<std::vector<double>> values;
  /// Stratum (0-based) of each value, same shape as values.
  std::vector<std::vector<std::size_t>> bins;
  std::uint64_t seed = 0;

  std::size_t rows() const noexcept { return values.size(); }
  std::size_t columns() const noexcept { return specs.size(); }
  /// Column index by variable name, or npos.
  std::size_t find(const std::string& name) const noexcept;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Random permutation of 0..q-1 by Fisher-Yates.
std::vector<std::size_t> fisher_yates(std::size_t q, std::mt19937_64& rng);

/// Latin hypercube sample: each column gets its own permutation of the q
/// equal-probability strata and one uniformly jittered point per stratum,
/// mapped through the inverse CDF. Values at or below a spec's floor are
/// redrawn inside the same stratum.
SampleMatrix lhs_sample(const std::vector<RandomVariableSpec>& specs, std::size_t q, std::uint64_t seed);

/// Stratified assignment of q rows to `levels` categories: a uniform LHS
/// column cut into `levels` equal parts, so every level receives either
/// floor(q/levels) or ceil(q/levels) rows.
std::vector<std::size_t> stratified_levels(std::size_t q, std::size_t levels, std::uint64_t seed);

}  // namespace flume::uq
