#include "uq/propagate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "core/error.hpp"

namespace flume::uq {

unsigned effective_jobs(unsigned requested) {
  unsigned jobs = std::max(1u, requested);
  if (const char* env = std::getenv("FLUME_UQ_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) jobs = std::min(jobs, static_cast<unsigned>(cap));
  }
  return jobs;
}

void row_inputs(const SampleMatrix& samples, std::size_t row, structural::StructuralParams& params,
                double& load_factor) {
  for (std::size_t j = 0; j < samples.columns(); ++j) {
    const std::string& name = samples.specs[j].name;
    const double v = samples.values[row][j];
    if (name == "yield_strength") params.yield_strength = v;
    else if (name == "col_weight_per_len") params.col_weight_per_len = v;
    else if (name == "beam_weight_per_len") params.beam_weight_per_len = v;
    else if (name == "girder_weight_per_len") params.girder_weight_per_len = v;
    else if (name == "youngs_modulus") params.youngs_modulus = v;
    else if (name == "load_factor") load_factor = v;
    else fail(ErrorCode::InvalidSpec, "unrecognised variable '" + name + "'");
  }
}

EdpRow evaluate_row(const structural::StructuralParams& params, double load_factor,
                    const forces::ForceRecord& record, const PropagationConfig& cfg) {
  const auto model = structural::build_frame(params, cfg.geometry);
  const std::size_t n = record.times.size();
  if (n < 2) fail(ErrorCode::EmptyHistory, "force history needs at least two samples");
  if (record.force.size() != n) fail(ErrorCode::LengthMismatch, "force record length mismatch");
  const double dt_load = (record.times.back() - record.times.front()) / static_cast<double>(n - 1);
  if (!(dt_load > 0.0)) fail(ErrorCode::InvalidArgument, "force history times must increase");

  const double t1 = structural::fundamental_period(model);
  const auto sub = static_cast<std::size_t>(std::max(1.0, std::ceil(dt_load * cfg.steps_per_period / t1)));
  const double dt = dt_load / static_cast<double>(sub);
  const std::size_t steps = (n - 1) * sub + 1;
  const auto stories = static_cast<std::size_t>(model.n_stories());

  std::vector<std::vector<double>> load(stories, std::vector<double>(steps, 0.0));
  for (std::size_t s = 0; s < stories && s < cfg.story_fractions.size(); ++s) {
    const double frac = cfg.story_fractions[s] * load_factor;
    if (frac == 0.0) continue;
    for (std::size_t k = 0; k < steps; ++k) {
      const std::size_t i = k / sub;
      const double w = static_cast<double>(k % sub) / static_cast<double>(sub);
      const double f = i + 1 < n ? (1.0 - w) * record.force[i] + w * record.force[i + 1] : record.force[i];
      load[s][k] = frac * f;
    }
  }

  const auto edp = structural::newmark_response(model, load, dt);
  EdpRow row;
  row.params = params;
  row.load_factor = load_factor;
  row.period = t1;
  row.rmsa = edp.rmsa_envelope;
  row.peak_displacement = edp.peak_displacement_envelope;
  row.story_rmsa = edp.rmsa;
  row.story_peak_displacement = edp.peak_displacement;
  row.yielded = edp.yielded;
  return row;
}

EdpTable propagate(const SampleMatrix& samples, const std::vector<std::size_t>& height_index,
                   const LoadLibrary& library, const PropagationConfig& cfg) {
  const std::size_t q = samples.rows();
  if (height_index.size() != q) fail(ErrorCode::LengthMismatch, "one wave-height index per sample required");
  if (library.size() == 0 || library.records.size() != library.size()) {
    fail(ErrorCode::MissingInput, "empty or inconsistent load library");
  }
  for (std::size_t i = 0; i < q; ++i) {
    if (height_index[i] >= library.size()) fail(ErrorCode::InvalidArgument, "wave-height index out of range");
  }
  // Validate names once so a bad spec fails the whole sweep up front.
  if (q > 0) {
    structural::StructuralParams p;
    double lf = 1.0;
    row_inputs(samples, 0, p, lf);
  }

  EdpTable table;
  table.rows.resize(q);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < q; i = next++) {
      EdpRow& row = table.rows[i];
      structural::StructuralParams params;
      double load_factor = 1.0;
      row_inputs(samples, i, params, load_factor);
      const std::size_t h = height_index[i];
      try {
        row = evaluate_row(params, load_factor, library.records[h], cfg);
      } catch (const Error& e) {
        row = EdpRow{};
        row.params = params;
        row.load_factor = load_factor;
        row.failed = true;
        row.error = std::string(to_string(e.code())) + ": " + e.what();
      }
      row.sample_id = i;
      row.height_index = h;
      row.wave_height = library.wave_heights[h];
    }
  };
  const unsigned jobs = std::min<unsigned>(effective_jobs(cfg.jobs), static_cast<unsigned>(std::max<std::size_t>(q, 1)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& r : table.rows) table.failures += r.failed ? 1 : 0;
  return table;
}

}  // namespace flume::uq
