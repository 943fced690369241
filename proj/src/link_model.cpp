#include "qkdrate/link_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qkdrate/error.hpp"

namespace qkdrate {

void LinkParams::validate() const {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!(l_c >= 0.0)) throw std::invalid_argument("l_c must be >= 0");
  if (!(eta_det > 0.0 && eta_det <= 1.0)) throw std::invalid_argument("eta_det must lie in (0, 1]");
  if (!(p_dark >= 0.0 && p_dark < 1.0)) throw std::invalid_argument("p_dark must lie in [0, 1)");
  if (!(delta_0 >= 0.0 && delta_0 < 0.5)) throw std::invalid_argument("delta_0 must lie in [0, 1/2)");
}

LinkParams kth_link() {
  return LinkParams{.alpha = 0.2, .l_c = 1.0, .eta_det = 0.18, .p_dark = 2e-4, .delta_0 = 0.01};
}

double channel_transmission(const LinkParams& params, double l_km) {
  if (!(l_km >= 0.0)) throw std::invalid_argument("fiber length must be >= 0");
  return std::pow(10.0, -(params.alpha * l_km + params.l_c) / 10.0);
}

LinkObservables link_observables(const LinkParams& params, double mu, double l_km) {
  params.validate();
  if (!(mu > 0.0)) throw std::invalid_argument("mean photon number mu must be > 0");

  LinkObservables obs;
  obs.eta_c = channel_transmission(params, l_km);
  obs.p_signal = -std::expm1(-mu * obs.eta_c * params.eta_det);
  obs.p_exp = obs.p_signal + params.p_dark;
  if (!(obs.p_exp > 0.0)) {
    throw computation_error("dead link: click probability is zero at l = " + std::to_string(l_km) +
                            " km");
  }
  obs.delta = (params.delta_0 * obs.p_signal + 0.5 * params.p_dark) / obs.p_exp;
  // 1 - (1 + mu) e^-mu, written to stay accurate for small mu.
  const double multiphoton = -std::expm1(-mu) - mu * std::exp(-mu);
  obs.big_delta_raw = multiphoton / obs.p_exp;
  obs.big_delta = std::clamp(obs.big_delta_raw, 0.0, 1.0);
  return obs;
}

}  // namespace qkdrate
