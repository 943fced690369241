#include "qkdrate/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qkdrate::oracle {

std::vector<PairAtom> atoms_of(const PairState& state) {
  const double untagged = 1.0 - state.big_delta;
  return {
      {false, 0, 0, untagged * state.q_i},
      {false, 0, 1, untagged * state.q_z},
      {false, 1, 0, untagged * state.q_x},
      {false, 1, 1, untagged * state.q_y},
      {true, 0, 0, state.big_delta / 2.0},
      {true, 0, 1, state.big_delta / 2.0},
  };
}

Enumeration enumerate_bstep_detailed(const PairState& state) {
  const std::vector<PairAtom> atoms = atoms_of(state);

  Enumeration result;
  double tagged_kept = 0.0;
  // Untagged surviving control labels, indexed by 2 * bit + phase.
  std::array<double, 4> untagged_labels{};

  for (const PairAtom& control : atoms) {
    for (const PairAtom& target : atoms) {
      const double weight = control.weight * target.weight;
      const bool kept = control.bit == target.bit;

      CaseWeight* tag_case = nullptr;
      if (!control.tagged && !target.tagged) {
        tag_case = &result.both_untagged;
      } else if (control.tagged && target.tagged) {
        tag_case = &result.both_tagged;
      } else if (!control.tagged) {
        tag_case = &result.untagged_control_tagged_target;
      } else {
        tag_case = &result.tagged_control_untagged_target;
      }
      tag_case->total += weight;

      if (!kept) {
        result.discarded_weight += weight;
        continue;
      }
      tag_case->kept += weight;
      result.kept_weight += weight;
      if (control.tagged || target.tagged) {
        tagged_kept += weight;
      } else {
        const int phase = control.phase ^ target.phase;
        untagged_labels[static_cast<std::size_t>(2 * control.bit + phase)] += weight;
      }
    }
  }

  BStepOutcome& out = result.outcome;
  out.p_survive = result.kept_weight;
  out.state.big_delta = tagged_kept / result.kept_weight;
  const double untagged_kept = untagged_labels[0] + untagged_labels[1] + untagged_labels[2] + untagged_labels[3];
  if (untagged_kept > 0.0) {
    out.state.q_i = untagged_labels[0] / untagged_kept;
    out.state.q_z = untagged_labels[1] / untagged_kept;
    out.state.q_x = untagged_labels[2] / untagged_kept;
    out.state.q_y = untagged_labels[3] / untagged_kept;
  } else {
    out.state.q_i = state.q_i;
    out.state.q_x = state.q_x;
    out.state.q_y = state.q_y;
    out.state.q_z = state.q_z;
  }
  return result;
}

BStepOutcome enumerate_bstep(const PairState& state) {
  return enumerate_bstep_detailed(state).outcome;
}

double max_deviation(const PairState& state) {
  const BStepOutcome exact = enumerate_bstep(state);
  const BStepOutcome analytic = bstep(state);
  const std::array<double, 6> diffs{
      exact.p_survive - analytic.p_survive,
      exact.state.big_delta - analytic.state.big_delta,
      exact.state.q_i - analytic.state.q_i,
      exact.state.q_x - analytic.state.q_x,
      exact.state.q_y - analytic.state.q_y,
      exact.state.q_z - analytic.state.q_z,
  };
  double worst = 0.0;
  for (double d : diffs) worst = std::max(worst, std::abs(d));
  return worst;
}

}  // namespace qkdrate::oracle
