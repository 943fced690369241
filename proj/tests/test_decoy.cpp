#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qkdrate/decoy.hpp"
#include "qkdrate/keyrate.hpp"
#include "qkdrate/optimizer.hpp"

using namespace qkdrate;

namespace {
const DecoyParams kFig7{.mu = 0.55, .kappa = 0.10, .nu = 0.27};
}

TEST_CASE("decoy parameter relations") {
  CHECK_NOTHROW(kFig7.validate());
  CHECK_THROWS_AS((DecoyParams{.mu = 0.55, .kappa = 0.27, .nu = 0.10}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DecoyParams{.mu = 0.55, .kappa = 0.2, .nu = 0.2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DecoyParams{.mu = 0.3, .kappa = 0.1, .nu = 0.27}.validate()), std::invalid_argument);
  // kappa e^-kappa < nu e^-nu fails beyond the maximum of x e^-x at x = 1.
  CHECK_THROWS_AS((DecoyParams{.mu = 5.0, .kappa = 1.5, .nu = 3.0}.validate()), std::invalid_argument);
}

TEST_CASE("simulated click probabilities") {
  const DecoyObservations obs = simulated_yields(kth_link(), kFig7, 40.0);
  CHECK(obs.p_exp_kappa == doctest::Approx(0.0024635001525544828).epsilon(1e-13));
  CHECK(obs.p_exp_nu == doctest::Approx(0.0062996983444885235).epsilon(1e-13));
  CHECK(obs.p_exp_mu == doctest::Approx(0.012586015549826371).epsilon(1e-13));

  for (double l = 0.0; l <= 150.0; l += 10.0) {
    const DecoyObservations o = simulated_yields(kth_link(), kFig7, l);
    CHECK(o.p_exp_kappa < o.p_exp_nu);
    CHECK(o.p_exp_nu < o.p_exp_mu);
  }
  const DecoyObservations vacuum_like =
      simulated_yields(kth_link(), DecoyParams{.mu = 0.55, .kappa = 1e-12, .nu = 0.27}, 10.0);
  CHECK(vacuum_like.p_exp_kappa == doctest::Approx(2e-4).epsilon(1e-9));
}

TEST_CASE("yield bound on a constructed single-photon channel") {
  const double s = 0.37;
  auto clicks = [&](double x) { return x * std::exp(-x) * s; };
  const DecoyObservations obs{.p_exp_kappa = clicks(kFig7.kappa), .p_exp_nu = clicks(kFig7.nu), .p_exp_mu = 0.2};
  const DecoyBounds b = decoy_bounds(obs, kFig7, 0.0);
  CHECK(b.s1_lower == doctest::Approx(s).epsilon(1e-13));
  CHECK(b.big_delta_upper == doctest::Approx(1.0 - s * 0.55 * std::exp(-0.55) / 0.2).epsilon(1e-13));
  CHECK_FALSE(b.clamped());
}

TEST_CASE("yield bounds at 40 km") {
  const DecoyBounds b = decoy_bounds(simulated_yields(kth_link(), kFig7, 40.0), kFig7, 2e-4);
  CHECK(b.s1_lower == doctest::Approx(0.022521330992711444).epsilon(1e-11));
  CHECK(b.big_delta_upper == doctest::Approx(0.43218545401629001).epsilon(1e-12));
}

TEST_CASE("decoy bound errors") {
  const DecoyObservations obs{.p_exp_kappa = 0.01, .p_exp_nu = 0.02, .p_exp_mu = 0.03};
  CHECK_THROWS_AS(decoy_bounds(obs, DecoyParams{.mu = 0.55, .kappa = 0.2, .nu = 0.2}, 2e-4), std::invalid_argument);
  CHECK_THROWS_AS(decoy_bounds(DecoyObservations{.p_exp_kappa = 0.0, .p_exp_nu = 0.02, .p_exp_mu = 0.03}, kFig7, 0.0),
                  std::invalid_argument);
  // Below what dark counts alone produce: no non-negative yields fit.
  CHECK_THROWS_AS(decoy_bounds(DecoyObservations{.p_exp_kappa = 1e-5, .p_exp_nu = 0.02, .p_exp_mu = 0.03}, kFig7, 2e-4),
                  std::invalid_argument);
}

TEST_CASE("bound is a valid lower bound on the honest channel") {
  const LinkParams link = kth_link();
  for (double l = 0.0; l <= 200.0; l += 2.5) {
    const DecoyBounds b = decoy_bounds(simulated_yields(link, kFig7, l), kFig7, link.p_dark);
    const double eta = channel_transmission(link, l) * link.eta_det;
    const double true_single = 1.0 - (1.0 - eta) * (1.0 - link.p_dark);
    CHECK(b.s1_lower <= true_single);
    CHECK(b.s1_lower >= 0.0);
    CHECK(b.big_delta_upper >= 0.0);
    CHECK(b.big_delta_upper <= 1.0);
  }
  // Far down the fiber the single-photon yield is just the dark count rate.
  const DecoyBounds far = decoy_bounds(simulated_yields(link, kFig7, 400.0), kFig7, link.p_dark);
  CHECK(far.s1_lower == doctest::Approx(link.p_dark).epsilon(1e-6));
}

TEST_CASE("decoy rate pipeline") {
  const DecoyRate r = decoy_rate(Protocol::FourState, kth_link(), kFig7, 40.0, 2);
  CHECK_FALSE(r.inconsistent_state);
  CHECK(r.rate == doctest::Approx(7.1368981726174512e-5).epsilon(1e-10));

  // Zero rounds: the one-way rate with Delta replaced by the decoy bound.
  const DecoyRate zero = decoy_rate(Protocol::SixState, kth_link(), kFig7, 30.0, 0);
  const PairState state = initial_pair_state(Protocol::SixState, zero.signal.delta, zero.bounds.big_delta_upper);
  CHECK(zero.rate == rate_css(zero.observations.p_exp_mu, 3, state));

  // Dark counts only: the error rate is 1/2 and no key survives.
  const DecoyRate dead = decoy_rate(Protocol::FourState, kth_link(), kFig7, 400.0, 0);
  CHECK(dead.signal.delta == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(dead.rate == 0.0);
}

TEST_CASE("decoy pipeline beats the plain source at long distance") {
  const LinkParams link = kth_link();
  for (Protocol protocol : {Protocol::FourState, Protocol::SixState}) {
    for (double l = 30.0; l <= 80.0; l += 5.0) {
      const double decoy = decoy_rate(protocol, link, kFig7, l, 0).rate;
      const double plain = optimize_mu(protocol, link, l, 0, Pipeline::standard()).rate_star;
      const double plain_same_mu = evaluate_point(protocol, link, kFig7.mu, l, 0, Pipeline::standard()).rate;
      CHECK(decoy >= plain);
      CHECK(decoy >= plain_same_mu);
    }
  }
}
