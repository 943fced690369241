#include "qkdrate/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qkdrate/error.hpp"

namespace qkdrate {

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

namespace {

// Rounding can push sums of valid weights a few ulps outside [0, 1].
double probability(double p) {
  if (p < -kProbabilityTolerance || p > 1.0 + kProbabilityTolerance) {
    throw std::invalid_argument("error probability outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

void check_rate_inputs(double p_exp, int beta) {
  if (!(p_exp > 0.0 && p_exp <= 1.0)) throw std::invalid_argument("p_exp must lie in (0, 1]");
  if (beta != 2 && beta != 3) throw std::invalid_argument("basis count must be 2 or 3");
}

}  // namespace

double css_yield(const PairState& state) {
  const double untagged = 1.0 - state.big_delta;
  const double bit = probability(observed_qber(state));
  const double phase = probability(state.phase_error_untagged());
  return untagged - binary_entropy(bit) - untagged * binary_entropy(phase);
}

double rate_css(double p_exp, int beta, const PairState& state) {
  check_rate_inputs(p_exp, beta);
  return std::max(0.0, p_exp / beta * css_yield(state));
}

double rate_bcss(double p_exp, int beta, const BStepTrajectory& trajectory) {
  check_rate_inputs(p_exp, beta);
  if (trajectory.states.empty()) throw std::invalid_argument("empty B-step trajectory");
  // ldexp keeps the n = 0 case bit-identical to rate_css.
  const double prefactor = std::ldexp(p_exp * trajectory.cumulative_survival, -trajectory.rounds()) / beta;
  return std::max(0.0, prefactor * css_yield(trajectory.final_state()));
}

std::string_view to_string(FeasibilityClass feasibility) {
  switch (feasibility) {
    case FeasibilityClass::Feasible:
      return "feasible";
    case FeasibilityClass::GreyRegion:
      return "grey";
    case FeasibilityClass::Infeasible:
      return "infeasible";
  }
  return "unknown";
}

double entanglement_threshold(Protocol protocol) {
  const double beta = basis_count(protocol);
  return (beta - 1.0) / (2.0 * beta);
}

double entanglement_bound(Protocol protocol, double delta) {
  const double beta = basis_count(protocol);
  return 1.0 - 2.0 * beta * delta / (beta - 1.0);
}

double purification_bound(Protocol protocol, double delta) {
  if (protocol == Protocol::FourState) return 1.0 - 5.0 * delta;
  return (2.0 - 5.0 * delta - std::sqrt(5.0) * delta) / 2.0;
}

FeasibilityClass classify_feasibility(Protocol protocol, double delta, double big_delta) {
  if (!(delta >= 0.0 && delta <= 0.5)) throw std::invalid_argument("QBER must lie in [0, 1/2]");
  if (!(big_delta >= 0.0 && big_delta <= 1.0)) {
    throw std::invalid_argument("tagging fraction must lie in [0, 1]");
  }
  if (big_delta >= 1.0) return FeasibilityClass::Infeasible;
  if (delta / (1.0 - big_delta) >= entanglement_threshold(protocol)) {
    return FeasibilityClass::Infeasible;
  }
  if (!(big_delta < purification_bound(protocol, delta))) return FeasibilityClass::GreyRegion;
  return FeasibilityClass::Feasible;
}

}  // namespace qkdrate
