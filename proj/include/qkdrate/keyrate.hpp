#pragma once

#include <string_view>

#include "qkdrate/bstep.hpp"
#include "qkdrate/pair_state.hpp"

namespace qkdrate {

/// Rates at or below this value count as "no key" in threshold searches.
inline constexpr double kRatePositivityFloor = 1e-15;

/// Binary Shannon entropy in bits, H(0) = H(1) = 0.
/// Throws std::invalid_argument for p outside [0, 1].
double binary_entropy(double p);

/// Bracket 1 - Delta - H(delta) - (1 - Delta) H(delta_p) of the CSS rate for
/// a pair state, before sifting, survival factors and clamping.
double css_yield(const PairState& state);

/// One-way CSS (GLLP) rate (p_exp/beta) * css_yield(state), clamped at 0.
double rate_css(double p_exp, int beta, const PairState& state);

/// Rate of n B-steps followed by one-way CSS post-processing:
/// p_exp * P_cum / (2^n beta) * css_yield(final state), clamped at 0.
/// With zero rounds this is rate_css on the initial state.
double rate_bcss(double p_exp, int beta, const BStepTrajectory& trajectory);

enum class FeasibilityClass { Feasible, GreyRegion, Infeasible };

std::string_view to_string(FeasibilityClass feasibility);

/// Entanglement threshold (beta - 1)/(2 beta) on delta/(1 - Delta).
double entanglement_threshold(Protocol protocol);

/// Largest tagging fraction allowed by the B-step purification condition at
/// QBER delta: 1 - 5 delta (four-state), (2 - 5 delta - sqrt(5) delta)/2
/// (six-state). Not clamped.
double purification_bound(Protocol protocol, double delta);

/// Largest tagging fraction allowed by the entanglement condition:
/// 1 - 2 beta delta/(beta - 1). Not clamped.
double entanglement_bound(Protocol protocol, double delta);

/// Infeasible when delta/(1 - Delta) reaches the entanglement threshold (a
/// fully tagged link is always infeasible); GreyRegion when entanglement is
/// possible but Delta violates the purification bound; Feasible otherwise.
/// Throws std::invalid_argument for delta outside [0, 1/2] or Delta outside [0, 1].
FeasibilityClass classify_feasibility(Protocol protocol, double delta, double big_delta);

}  // namespace qkdrate
