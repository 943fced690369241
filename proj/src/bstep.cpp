#include "qkdrate/bstep.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "qkdrate/error.hpp"

namespace qkdrate {

BStepOutcome bstep(const PairState& state) {
  const double tag = state.big_delta;
  const double untag = 1.0 - tag;

  const double no_flip = state.q_i + state.q_z;  // Z-parity agrees
  const double flip = state.q_x + state.q_y;
  const double d_z = state.q_i - state.q_z;
  const double d_y = state.q_x - state.q_y;
  const double untagged_keep = no_flip * no_flip + flip * flip;

  const double p_survive = untag * untag * untagged_keep + 2.0 * tag * untag * no_flip + tag * tag;
  if (!(p_survive > 0.0)) throw computation_error("B-step survival probability vanished");

  BStepOutcome out;
  out.p_survive = p_survive;
  out.state.big_delta = (tag * tag + 2.0 * tag * untag * no_flip) / p_survive;
  if (untag == 0.0) {
    // Fully tagged: the untagged component has no weight and is carried along.
    out.state = state;
    return out;
  }
  const double norm = 2.0 * untagged_keep;
  out.state.q_i = (no_flip * no_flip + d_z * d_z) / norm;
  out.state.q_z = (no_flip * no_flip - d_z * d_z) / norm;
  out.state.q_x = (flip * flip + d_y * d_y) / norm;
  out.state.q_y = (flip * flip - d_y * d_y) / norm;
  assert(std::abs(out.state.q_i + out.state.q_x + out.state.q_y + out.state.q_z - 1.0) < 1e-9);
  return out;
}

BStepTrajectory iterate_bsteps(const PairState& state, int rounds, int max_rounds) {
  if (rounds < 0) throw std::invalid_argument("number of B-step rounds must be >= 0");
  if (rounds > max_rounds) {
    throw std::invalid_argument("number of B-step rounds exceeds the limit of " +
                                std::to_string(max_rounds));
  }
  BStepTrajectory trajectory;
  trajectory.states.reserve(static_cast<std::size_t>(rounds) + 1);
  trajectory.survivals.reserve(static_cast<std::size_t>(rounds));
  trajectory.states.push_back(state);
  for (int round = 0; round < rounds; ++round) {
    BStepOutcome next = bstep(trajectory.states.back());
    trajectory.survivals.push_back(next.p_survive);
    trajectory.cumulative_survival *= next.p_survive;
    trajectory.states.push_back(next.state);
  }
  return trajectory;
}

}  // namespace qkdrate
