#pragma once

namespace qkdrate {

/// Constants of the fiber link, the detection unit and the optical setup.
struct LinkParams {
  double alpha = 0.2;      ///< fiber loss coefficient [dB/km]
  double l_c = 1.0;        ///< distance-independent loss [dB]
  double eta_det = 0.18;   ///< detector efficiency
  double p_dark = 2e-4;    ///< total dark-count probability per pulse
  double delta_0 = 0.01;   ///< baseline optical error fraction

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

/// The link used in the KTH experiment; identical to a default-constructed
/// LinkParams, spelled out for readability at call sites.
LinkParams kth_link();

/// Distance-dependent observables of the link at one mean photon number.
struct LinkObservables {
  double eta_c = 0.0;
  double p_signal = 0.0;
  double p_exp = 0.0;
  double delta = 0.0;
  /// Effective tagging fraction, clamped into [0, 1].
  double big_delta = 0.0;
  /// Tagging fraction before clamping; may exceed 1 far down the fiber.
  double big_delta_raw = 0.0;

  bool fully_tagged() const { return big_delta_raw >= 1.0; }
};

/// Fiber transmission 10^(-(alpha*l + l_c)/10). Throws on negative l.
double channel_transmission(const LinkParams& params, double l_km);

/// Click probability, sifted-key QBER and tagging fraction for a weak
/// coherent source of mean photon number `mu` after `l_km` of fiber.
///
/// The total click probability is the sum of signal and dark clicks (the
/// cross term is neglected). Throws computation_error if no click can ever
/// happen (p_dark = 0 and no signal reaches the detector).
LinkObservables link_observables(const LinkParams& params, double mu, double l_km);

}  // namespace qkdrate
