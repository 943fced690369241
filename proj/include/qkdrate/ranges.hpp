#pragma once

#include <string_view>
#include <vector>

namespace qkdrate::cli {

/// Parses "start:stop:step" (stop inclusive) or a single number.
/// Values are start + k*step, never accumulated.
std::vector<double> parse_range(std::string_view text);

/// Parses B-step round lists such as "0,1,2", "0..10" or "0,2..4,8".
/// The result is sorted and free of duplicates.
std::vector<int> parse_rounds(std::string_view text);

}  // namespace qkdrate::cli
