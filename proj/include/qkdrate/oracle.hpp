#pragma once

#include <vector>

#include "qkdrate/bstep.hpp"
#include "qkdrate/pair_state.hpp"

namespace qkdrate::oracle {

/// One term of the single-pair mixture: Bell label Psi_{bit,phase} with a
/// tag flag. Tagged atoms only carry bit = 0 (the sigma state).
struct PairAtom {
  bool tagged = false;
  int bit = 0;
  int phase = 0;
  double weight = 0.0;
};

/// The six atoms of a PairState: four untagged labels weighted (1 - Delta) q
/// and two tagged labels weighted Delta / 2.
std::vector<PairAtom> atoms_of(const PairState& state);

/// Kept and total weight of one tag combination of (control, target).
struct CaseWeight {
  double kept = 0.0;
  double total = 0.0;
};

struct Enumeration {
  BStepOutcome outcome;
  double kept_weight = 0.0;
  double discarded_weight = 0.0;
  CaseWeight both_untagged;
  CaseWeight both_tagged;
  CaseWeight untagged_control_tagged_target;
  CaseWeight tagged_control_untagged_target;
};

/// Exact B-step by enumerating every (control, target) atom pair, mapping
/// Psi_{i,j} x Psi_{x,y} -> Psi_{i,j^y} x Psi_{i^x,y}, keeping the control
/// when i == x and tagging it if either input was tagged.
Enumeration enumerate_bstep_detailed(const PairState& state);

BStepOutcome enumerate_bstep(const PairState& state);

/// Largest absolute difference between the enumerated and the analytic
/// B-step over p_survive, Delta' and the four Bell weights.
double max_deviation(const PairState& state);

}  // namespace qkdrate::oracle
