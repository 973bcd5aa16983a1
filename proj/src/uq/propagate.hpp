#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forces/forces.hpp"
#include "structural/frame.hpp"
#include "uq/lhs.hpp"

namespace flume::uq {

/// Force histories indexed by wave height, one per precomputed flume run.
struct LoadLibrary {
  std::vector<double> wave_heights;
  std::vector<forces::ForceRecord> records;

  std::size_t size() const noexcept { return wave_heights.size(); }
};

struct PropagationConfig {
  structural::FrameGeometry geometry;
  /// Fraction of the structure load applied at each floor; missing entries
  /// are zero. The default puts the whole load on the first floor.
  std::vector<double> story_fractions{1.0};
  /// Structural steps per fundamental period, used to subdivide the load
  /// sampling interval.
  double steps_per_period = 40.0;
  unsigned jobs = 1;
  double failure_threshold = 0.01;
};

struct EdpRow {
  std::size_t sample_id = 0;
  std::size_t height_index = 0;
  double wave_height = 0.0;
  structural::StructuralParams params;
  double load_factor = 1.0;
  double period = 0.0;
  double rmsa = 0.0;
  double peak_displacement = 0.0;
  std::vector<double> story_rmsa;
  std::vector<double> story_peak_displacement;
  bool yielded = false;
  bool failed = false;
  std::string error;
};

struct EdpTable {
  std::vector<EdpRow> rows;
  std::size_t failures = 0;

  double failure_fraction() const noexcept {
    return rows.empty() ? 0.0 : static_cast<double>(failures) / static_cast<double>(rows.size());
  }
};

/// Structural parameters and load factor of one sample row. Columns named
/// yield_strength, col_weight_per_len, beam_weight_per_len,
/// girder_weight_per_len, youngs_modulus and load_factor are recognised;
/// missing ones keep their defaults. Any other name is an InvalidSpec.
void row_inputs(const SampleMatrix& samples, std::size_t row, structural::StructuralParams& params,
                double& load_factor);

/// Evaluate one sample: build the frame, scale and split the force history,
/// integrate and reduce to EDPs. Throws on structural errors.
EdpRow evaluate_row(const structural::StructuralParams& params, double load_factor,
                    const forces::ForceRecord& record, const PropagationConfig& cfg);

/// Parallel map over rows; results are stored in row order. Failing rows
/// are recorded, not thrown.
EdpTable propagate(const SampleMatrix& samples, const std::vector<std::size_t>& height_index,
                   const LoadLibrary& library, const PropagationConfig& cfg);

/// Worker count: cfg.jobs capped by FLUME_UQ_THREADS when set, at least 1.
unsigned effective_jobs(unsigned requested);

}  // namespace flume::uq
