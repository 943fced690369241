#include "qkdrate/pair_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qkdrate/error.hpp"

namespace qkdrate {

std::string_view to_string(Protocol protocol) {
  return protocol == Protocol::FourState ? "four" : "six";
}

Protocol parse_protocol(std::string_view text) {
  if (text == "four" || text == "four-state" || text == "bb84") return Protocol::FourState;
  if (text == "six" || text == "six-state") return Protocol::SixState;
  throw std::invalid_argument("unknown protocol '" + std::string(text) + "' (expected four or six)");
}

void PairState::validate() const {
  if (!(big_delta >= 0.0 && big_delta <= 1.0)) {
    throw std::invalid_argument("tagging fraction must lie in [0, 1]");
  }
  for (double q : {q_i, q_x, q_y, q_z}) {
    if (!(q >= -kProbabilityTolerance && q <= 1.0 + kProbabilityTolerance)) {
      throw std::invalid_argument("Bell-diagonal weights must lie in [0, 1]");
    }
  }
  if (std::abs(q_i + q_x + q_y + q_z - 1.0) > kProbabilityTolerance) {
    throw std::invalid_argument("Bell-diagonal weights must sum to 1");
  }
}

double max_rescaled_error(Protocol protocol) {
  // q_i >= 0 with q_x = q_z = r (four-state) or q_x = q_y = q_z = r/2 (six-state).
  return protocol == Protocol::FourState ? 0.5 : 2.0 / 3.0;
}

PairState initial_pair_state(Protocol protocol, double delta, double big_delta) {
  if (!(big_delta >= 0.0 && big_delta <= 1.0)) {
    throw std::invalid_argument("tagging fraction must lie in [0, 1]");
  }
  if (!(delta >= 0.0)) throw std::invalid_argument("QBER must be >= 0");

  if (big_delta == 1.0) {
    // Fully tagged: only a noiseless observation is consistent with the model.
    if (delta > kProbabilityTolerance) {
      throw computation_error("error rate inconsistent with state model: fully tagged pairs cannot produce errors");
    }
    return PairState{.big_delta = 1.0, .q_i = 1.0, .q_x = 0.0, .q_y = 0.0, .q_z = 0.0};
  }

  const double rescaled = delta / (1.0 - big_delta);
  PairState state{.big_delta = big_delta};
  if (protocol == Protocol::SixState) {
    state.q_x = state.q_y = state.q_z = rescaled / 2.0;
    state.q_i = 1.0 - 1.5 * rescaled;
  } else {
    state.q_x = state.q_z = rescaled;
    state.q_y = 0.0;
    state.q_i = 1.0 - 2.0 * rescaled;
  }
  if (state.q_i < -kProbabilityTolerance) {
    throw computation_error("error rate inconsistent with state model: delta/(1-Delta) = " +
                            std::to_string(rescaled) + " exceeds " +
                            std::to_string(max_rescaled_error(protocol)));
  }
  if (state.q_i < 0.0) state.q_i = 0.0;
  return state;
}

double observed_qber(const PairState& state) {
  return (1.0 - state.big_delta) * state.bit_error_untagged();
}

}  // namespace qkdrate
