#include "qkdrate/ranges.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qkdrate::cli {

namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<double> parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_number<double>(parts[0], "number")};
  if (parts.size() != 3) throw std::invalid_argument("range must have the form start:stop:step");

  const double start = parse_number<double>(parts[0], "range start");
  const double stop = parse_number<double>(parts[1], "range stop");
  const double step = parse_number<double>(parts[2], "range step");
  if (!(step > 0.0)) throw std::invalid_argument("range step must be > 0");
  if (!(start <= stop)) throw std::invalid_argument("range must satisfy start <= stop");

  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = start + static_cast<double>(k) * step;
  return values;
}

std::vector<int> parse_rounds(std::string_view text) {
  std::vector<int> rounds;
  for (std::string_view item : split(text, ',')) {
    const std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      rounds.push_back(parse_number<int>(item, "round count"));
      continue;
    }
    const int first = parse_number<int>(item.substr(0, dots), "round count");
    const int last = parse_number<int>(item.substr(dots + 2), "round count");
    if (first > last) throw std::invalid_argument("round range must satisfy a <= b in a..b");
    for (int n = first; n <= last; ++n) rounds.push_back(n);
  }
  if (std::any_of(rounds.begin(), rounds.end(), [](int n) { return n < 0; })) {
    throw std::invalid_argument("round counts must be >= 0");
  }
  std::sort(rounds.begin(), rounds.end());
  rounds.erase(std::unique(rounds.begin(), rounds.end()), rounds.end());
  return rounds;
}

}  // namespace qkdrate::cli
