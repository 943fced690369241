#pragma once

#include <string_view>

namespace qkdrate {

enum class Protocol { FourState, SixState };

/// Number of preparation bases: 2 for the four-state, 3 for the six-state protocol.
constexpr int basis_count(Protocol protocol) {
  return protocol == Protocol::FourState ? 2 : 3;
}

std::string_view to_string(Protocol protocol);

/// Parses "four"/"six" (also "bb84", "four-state", "six-state").
/// Throws std::invalid_argument on anything else.
Protocol parse_protocol(std::string_view text);

/// Single-pair state rho = Delta*sigma + (1 - Delta)*tau, where sigma is the
/// tagged (phase-randomized Phi+) state and tau is Bell diagonal with weights
/// q_i (Phi+), q_z (Phi-), q_x (Psi+), q_y (Psi-).
struct PairState {
  double big_delta = 0.0;
  double q_i = 1.0;
  double q_x = 0.0;
  double q_y = 0.0;
  double q_z = 0.0;

  /// Bit-error probability of an untagged pair.
  double bit_error_untagged() const { return q_x + q_y; }
  /// Phase-error probability of an untagged pair.
  double phase_error_untagged() const { return q_z + q_y; }

  /// Throws std::invalid_argument unless all weights are probabilities and
  /// the Bell weights sum to one within kProbabilityTolerance.
  void validate() const;

  bool operator==(const PairState&) const = default;
};

/// Upper limit on delta/(1 - Delta) for which the initial state exists.
double max_rescaled_error(Protocol protocol);

/// Initial state after distribution for an observed QBER `delta` and tagging
/// fraction `big_delta`. The six-state protocol fixes q_x = q_y = q_z; the
/// four-state protocol uses q_x = q_z with the worst-case choice q_y = 0.
///
/// Throws std::invalid_argument for big_delta outside [0, 1) or negative
/// delta, and computation_error when the implied q_i is negative.
PairState initial_pair_state(Protocol protocol, double delta, double big_delta);

/// QBER seen by Alice and Bob: (1 - Delta)(q_x + q_y).
double observed_qber(const PairState& state);

}  // namespace qkdrate
