#include "qkdrate/decoy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qkdrate/bstep.hpp"
#include "qkdrate/error.hpp"
#include "qkdrate/keyrate.hpp"

namespace qkdrate {

void DecoyParams::validate() const {
  if (!(kappa > 0.0)) throw std::invalid_argument("decoy intensity kappa must be > 0");
  if (!(kappa < nu)) throw std::invalid_argument("decoy intensities must satisfy kappa < nu");
  if (!(kappa * std::exp(-kappa) < nu * std::exp(-nu))) {
    throw std::invalid_argument("decoy intensities must satisfy kappa e^-kappa < nu e^-nu");
  }
  if (!(mu > kappa + nu)) throw std::invalid_argument("signal intensity must satisfy mu > kappa + nu");
}

DecoyObservations simulated_yields(const LinkParams& link, const DecoyParams& decoy, double l_km) {
  decoy.validate();
  return DecoyObservations{
      .p_exp_kappa = link_observables(link, decoy.kappa, l_km).p_exp,
      .p_exp_nu = link_observables(link, decoy.nu, l_km).p_exp,
      .p_exp_mu = link_observables(link, decoy.mu, l_km).p_exp,
  };
}

DecoyBounds decoy_bounds(const DecoyObservations& obs, const DecoyParams& decoy, double p_dark) {
  decoy.validate();
  if (!(p_dark >= 0.0 && p_dark < 1.0)) throw std::invalid_argument("p_dark must lie in [0, 1)");
  for (double p : {obs.p_exp_kappa, obs.p_exp_nu, obs.p_exp_mu}) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("click probabilities must lie in (0, 1]");
  }
  const double kappa = decoy.kappa;
  const double nu = decoy.nu;
  if (obs.p_exp_kappa < p_dark * std::exp(-kappa) || obs.p_exp_nu < p_dark * std::exp(-nu)) {
    throw std::invalid_argument("decoy click probabilities below the dark-count floor p_dark e^-x");
  }

  DecoyBounds bounds;
  bounds.s1_lower_raw = (nu * nu * std::exp(kappa) * obs.p_exp_kappa -
                         kappa * kappa * std::exp(nu) * obs.p_exp_nu - (nu * nu - kappa * kappa) * p_dark) /
                        (kappa * nu * (nu - kappa));
  bounds.s1_lower = std::clamp(bounds.s1_lower_raw, 0.0, 1.0);
  bounds.big_delta_upper_raw = 1.0 - bounds.s1_lower * decoy.mu * std::exp(-decoy.mu) / obs.p_exp_mu;
  bounds.big_delta_upper = std::clamp(bounds.big_delta_upper_raw, 0.0, 1.0);
  return bounds;
}

DecoyRate decoy_rate(Protocol protocol, const LinkParams& link, const DecoyParams& decoy,
                     double l_km, int rounds, int max_rounds) {
  DecoyRate result;
  result.observations = simulated_yields(link, decoy, l_km);
  result.bounds = decoy_bounds(result.observations, decoy, link.p_dark);
  result.signal = link_observables(link, decoy.mu, l_km);

  const double tagging = result.bounds.big_delta_upper;
  if (tagging >= 1.0) return result;

  PairState initial;
  try {
    initial = initial_pair_state(protocol, result.signal.delta, tagging);
  } catch (const computation_error&) {
    result.inconsistent_state = true;
    return result;
  }
  const BStepTrajectory trajectory = iterate_bsteps(initial, rounds, max_rounds);
  result.rate = rate_bcss(result.observations.p_exp_mu, basis_count(protocol), trajectory);
  return result;
}

}  // namespace qkdrate
