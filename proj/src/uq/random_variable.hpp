#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flume::uq {

enum class Distribution { Constant, Normal, Lognormal, Uniform, Beta };

std::string_view to_string(Distribution d) noexcept;
Distribution distribution_from_string(std::string_view s);

/// One random input. Which fields are used depends on the distribution:
/// Constant: value; Normal/Lognormal: mean, sd (arithmetic moments);
/// Uniform: min, max; Beta: alpha, beta, min, max.
struct RandomVariableSpec {
  std::string name;
  Distribution distribution = Distribution::Constant;
  double value = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  /// Samples at or below this value are redrawn inside their stratum.
  std::optional<double> floor;

  static RandomVariableSpec constant(std::string name, double value);
  static RandomVariableSpec normal(std::string name, double mean, double sd);
  static RandomVariableSpec lognormal(std::string name, double mean, double sd);
  static RandomVariableSpec uniform(std::string name, double min, double max);
  static RandomVariableSpec beta_dist(std::string name, double alpha, double beta, double min, double max);

  bool bounded() const noexcept { return distribution == Distribution::Uniform || distribution == Distribution::Beta; }
  /// Throws InvalidSpec.
  void validate() const;
};

/// Quantile function. Throws Domain for u outside (0, 1).
double inverse_cdf(const RandomVariableSpec& spec, double u);
double cdf(const RandomVariableSpec& spec, double x);

/// Width of one of q equal sub-intervals of a bounded spec's range.
double interval_width(const RandomVariableSpec& spec, std::size_t q);

/// Structural inputs with the normal distributions used as defaults for the
/// two-storey frame, each floored at zero.
std::vector<RandomVariableSpec> default_structural_specs();

/// The five load-factor variants compared in the distribution study, all
/// sharing the range [0.4, 1.6] where bounded.
std::vector<RandomVariableSpec> load_factor_study_specs();

/// INI-style file: one section per variable, keys distribution, value, mean,
/// sd, min, max, alpha, beta, floor. Section order is column order.
std::vector<RandomVariableSpec> read_spec_file(const std::filesystem::path& path);
std::vector<RandomVariableSpec> parse_spec_text(const std::string& text);
void write_spec_file(const std::filesystem::path& path, const std::vector<RandomVariableSpec>& specs);

}  // namespace flume::uq
