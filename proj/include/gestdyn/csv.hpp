#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gestdyn::csv {

// Shortest exact decimal: round-trips to the identical double.
std::string format_double(double value);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;  // throws ParameterError if absent
  std::vector<double> numeric(std::string_view name) const;
};

// RFC-4180-style subset: comma separator, LF line endings, mandatory header,
// no quoting (the tool never emits fields containing commas).
Table read_file(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows);

}  // namespace gestdyn::csv
