#include "qkdrate/csv.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace qkdrate::cli {

std::string format_rate(double value) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.5e", value);
  return buf.data();
}

std::string format_value(double value) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6g", value);
  return buf.data();
}

std::string format_exact(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general);
  return std::string(buf.data(), ptr);
}

CsvWriter::CsvWriter(std::ostream& out, std::string_view comment,
                     std::initializer_list<std::string_view> columns)
    : out_(out), columns_(columns.size()) {
  out_ << "# " << comment << '\n';
  bool first = true;
  for (std::string_view column : columns) {
    if (!first) out_ << ',';
    out_ << column;
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw std::logic_error("CSV row width does not match header");
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k != 0) out_ << ',';
    out_ << fields[k];
  }
  out_ << '\n';
}

}  // namespace qkdrate::cli
