#pragma once

#include <vector>

#include "qkdrate/pair_state.hpp"

namespace qkdrate {

/// Default upper limit on the number of B-step rounds. Each round costs at
/// least a factor 1/2 in rate, so more rounds are never useful in practice.
inline constexpr int kDefaultMaxRounds = 16;

struct BStepOutcome {
  PairState state;          ///< state of a surviving control pair
  double p_survive = 1.0;   ///< probability that the control pair is kept
};

/// Result of n successive B-step rounds.
struct BStepTrajectory {
  std::vector<PairState> states;   ///< n + 1 entries, states.front() is the input
  std::vector<double> survivals;   ///< n entries
  double cumulative_survival = 1.0;

  int rounds() const { return static_cast<int>(survivals.size()); }
  const PairState& final_state() const { return states.back(); }
};

/// One round of bilateral-XOR error rejection on the tagged/untagged mixture.
///
/// Two untagged pairs survive with Q = (q_i+q_z)^2 + (q_x+q_y)^2 and leave a
/// Bell-diagonal control pair; a tagged pair in the tetrad tags the surviving
/// control pair, which happens with weight (q_i+q_z) when only one is tagged
/// and always when both are.
BStepOutcome bstep(const PairState& state);

/// Applies `rounds` B-steps. Throws std::invalid_argument if rounds is
/// negative or larger than `max_rounds`.
BStepTrajectory iterate_bsteps(const PairState& state, int rounds,
                               int max_rounds = kDefaultMaxRounds);

}  // namespace qkdrate
