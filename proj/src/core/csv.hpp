#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace flume::csv {

/// Shortest round-trip decimal representation, always with '.' as separator.
std::string num(double v);

/// Header plus rows of raw cells. Only plain comma-separated cells are
/// supported (no quoting), which is all this project writes.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws MissingInput when absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const noexcept;
  double number(std::size_t row, std::size_t col) const;
  std::vector<double> numbers(std::string_view name) const;
};

Table read(const std::filesystem::path& path);
Table parse(std::string_view text);

double parse_double(std::string_view s);

}  // namespace flume::csv
