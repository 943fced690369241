#pragma once

#include <stdexcept>

namespace qkdrate {

// Inputs satisfied their preconditions but the model has no answer for them
// (dead link, an error rate the state model cannot represent, ...).
// Invalid parameters are reported with std::invalid_argument instead.
class computation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Absolute tolerance used for probability comparisons throughout the library.
inline constexpr double kProbabilityTolerance = 1e-12;

}  // namespace qkdrate
