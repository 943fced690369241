#pragma once

#include "qkdrate/bstep.hpp"
#include "qkdrate/link_model.hpp"
#include "qkdrate/pair_state.hpp"

namespace qkdrate {

/// Mean photon numbers of the signal pulse and the two decoy pulses.
struct DecoyParams {
  double mu = 0.55;
  double kappa = 0.10;
  double nu = 0.27;

  /// Requires 0 < kappa < nu, kappa e^-kappa < nu e^-nu and mu > kappa + nu.
  /// Throws std::invalid_argument naming the violated relation.
  void validate() const;
};

/// Click probabilities of the weak decoy, strong decoy and signal pulses.
struct DecoyObservations {
  double p_exp_kappa = 0.0;
  double p_exp_nu = 0.0;
  double p_exp_mu = 0.0;
};

struct DecoyBounds {
  double s1_lower = 0.0;          ///< single-photon yield lower bound, in [0, 1]
  double big_delta_upper = 1.0;   ///< signal tagging fraction upper bound, in [0, 1]
  double s1_lower_raw = 0.0;
  double big_delta_upper_raw = 1.0;

  bool clamped() const {
    return s1_lower != s1_lower_raw || big_delta_upper != big_delta_upper_raw;
  }
};

/// Click probabilities predicted by the honest-channel model at each of the
/// three intensities.
DecoyObservations simulated_yields(const LinkParams& link, const DecoyParams& decoy, double l_km);

/// Lower bound on the single-photon yield from the two decoy click rates and
/// the resulting upper bound on the tagging fraction of the signal pulse.
///
/// Throws std::invalid_argument if the decoy intensities are invalid, if a
/// click probability is outside (0, 1], or if a decoy click rate is below the
/// dark-count floor p_dark e^-x (no non-negative yields can produce it).
DecoyBounds decoy_bounds(const DecoyObservations& obs, const DecoyParams& decoy, double p_dark);

struct DecoyRate {
  double rate = 0.0;
  DecoyObservations observations;
  DecoyBounds bounds;
  LinkObservables signal;   ///< link observables at the signal intensity
  /// Set when delta/(1 - Delta_mu) has no valid initial state; rate is 0.
  bool inconsistent_state = false;
};

/// Decoy-state key rate after `rounds` B-steps: the initial state uses the
/// signal QBER and the decoy bound on the tagging fraction.
DecoyRate decoy_rate(Protocol protocol, const LinkParams& link, const DecoyParams& decoy,
                     double l_km, int rounds, int max_rounds = kDefaultMaxRounds);

}  // namespace qkdrate
