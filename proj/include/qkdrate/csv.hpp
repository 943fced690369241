#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qkdrate::cli {

/// Rates: scientific notation, 6 significant digits.
std::string format_rate(double value);
/// Everything else: %.6g.
std::string format_value(double value);
/// Shortest representation that round-trips (used in the config comment).
std::string format_exact(double value);

/// Comma-separated output with LF line endings, a leading "#" comment line
/// and one header row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::string_view comment, std::initializer_list<std::string_view> columns);

  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace qkdrate::cli
