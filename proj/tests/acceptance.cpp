// End-to-end acceptance checks against the published reference numbers.
// Prints one PASS/FAIL line per criterion; exits non-zero if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "qkdrate/bstep.hpp"
#include "qkdrate/keyrate.hpp"
#include "qkdrate/optimizer.hpp"
#include "qkdrate/oracle.hpp"

using namespace qkdrate;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

bool within(double value, double target, double tolerance) { return std::abs(value - target) <= tolerance; }

std::string km(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f km", value);
  return buf;
}

std::vector<double> reach_by_rounds(Protocol protocol, const Pipeline& pipeline, const LinkParams& link) {
  std::vector<double> reach;
  for (int n = 0; n <= kDefaultMaxRounds; ++n) reach.push_back(max_distance(protocol, link, n, pipeline));
  return reach;
}

std::string table(const std::vector<double>& reach) {
  std::string s;
  for (std::size_t n = 0; n < reach.size(); ++n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%zu:%.1f", n == 0 ? "" : " ", n, reach[n]);
    s += buf;
  }
  return s;
}

// Non-decreasing from n = 0 up to the round count of the largest reach.
bool rises_to_peak(const std::vector<double>& reach) {
  const auto peak = std::max_element(reach.begin(), reach.end());
  return std::is_sorted(reach.begin(), peak + 1);
}

}  // namespace

int main() {
  const LinkParams kth = kth_link();
  const Pipeline standard = Pipeline::standard();
  const Pipeline decoy = Pipeline::with_decoys(DecoyParams{.mu = 0.55, .kappa = 0.10, .nu = 0.27});

  const std::vector<double> four = reach_by_rounds(Protocol::FourState, standard, kth);
  const std::vector<double> six = reach_by_rounds(Protocol::SixState, standard, kth);
  std::printf("max distance by rounds, four-state: %s\n", table(four).c_str());
  std::printf("max distance by rounds, six-state:  %s\n", table(six).c_str());

  // 1. Dark-count cutoff without B-steps.
  report(1, within(four[0], 25.0, 2.0) && within(six[0], 25.0, 2.0),
         "no-B-step cutoff 25 +- 2 km: four " + km(four[0]) + ", six " + km(six[0]));

  // 2. Entanglement-bound distances.
  {
    const double four_bound = bound_distance(Protocol::FourState, kth, BoundKind::Entanglement);
    const double six_bound = bound_distance(Protocol::SixState, kth, BoundKind::Entanglement);
    report(2, within(four_bound, 42.0, 2.0) && within(six_bound, 50.0, 2.0),
           "entanglement bound 42/50 +- 2 km: four " + km(four_bound) + ", six " + km(six_bound));
  }

  // 3. One B-step.
  report(3, within(four[1], 30.0, 2.0) && within(six[1], 34.0, 2.0),
         "one B-step 30/34 +- 2 km: four " + km(four[1]) + ", six " + km(six[1]));

  // 4. Plateau over n <= 16.
  {
    const double four_best = *std::max_element(four.begin(), four.end());
    const double six_best = *std::max_element(six.begin(), six.end());
    const bool monotone = std::is_sorted(four.begin(), four.end()) && std::is_sorted(six.begin(), six.end());
    const bool to_peak = rises_to_peak(four) && rises_to_peak(six);
    report(4, within(four_best, 37.0, 2.0) && within(six_best, 44.0, 2.0) && monotone,
           "plateau 37/44 +- 2 km: four " + km(four_best) + ", six " + km(six_best) + ", non-decreasing in n: " +
               (monotone ? "yes" : "no") + " (up to the peak: " + (to_peak ? "yes" : "no") + ")");
  }

  // 5. Decoy plateau and B-step gain.
  {
    const std::vector<double> four_decoy = reach_by_rounds(Protocol::FourState, decoy, kth);
    const std::vector<double> six_decoy = reach_by_rounds(Protocol::SixState, decoy, kth);
    std::printf("decoy max distance by rounds, four-state: %s\n", table(four_decoy).c_str());
    std::printf("decoy max distance by rounds, six-state:  %s\n", table(six_decoy).c_str());
    const double four_best = *std::max_element(four_decoy.begin(), four_decoy.end());
    const double six_best = *std::max_element(six_decoy.begin(), six_decoy.end());
    const double four_gain = four_best - four_decoy[0];
    const double six_gain = six_best - six_decoy[0];
    report(5,
           within(four_best, 80.0, 3.0) && within(six_best, 80.0, 3.0) && within(four_gain, 15.0, 3.0) &&
               within(six_gain, 15.0, 3.0),
           "decoy plateau 80 +- 3 km and gain 15 +- 3 km: four " + km(four_best) + " (gain " + km(four_gain) +
               "), six " + km(six_best) + " (gain " + km(six_gain) + ")");
  }

  // 6. Enumeration oracle equivalence.
  {
    std::mt19937_64 rng(20240601);
    double worst = 0.0;
    int count = 0;
    for (; count < 5000; ++count) worst = std::max(worst, oracle::max_deviation(testing::random_pair_state(rng)));
    for (double tag : {0.0, 1.0}) {
      PairState s = testing::random_pair_state(rng);
      s.big_delta = tag;
      worst = std::max(worst, oracle::max_deviation(s));
      ++count;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "oracle equivalence on %d states: max deviation %.3e < 1e-12", count, worst);
    report(6, worst < 1e-12, buf);
  }

  // 7. Zero rounds reduce to the one-way rate bit for bit.
  {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const PairState s = testing::random_pair_state(rng);
      const double p_exp = 1e-6 + u(rng) * (1.0 - 1e-6);
      const int beta = trial % 2 == 0 ? 2 : 3;
      if (rate_bcss(p_exp, beta, iterate_bsteps(s, 0)) != rate_css(p_exp, beta, s)) ++mismatches;
    }
    report(7, mismatches == 0, "rate_bcss(n=0) == rate_css on 100 configurations, mismatches: " +
                                   std::to_string(mismatches));
  }

  // 8. Conservation and monotonicity of a B-step.
  {
    std::mt19937_64 rng(88);
    int conservation = 0, amplification = 0, contraction = 0;
    int amplification_checked = 0, contraction_checked = 0;
    for (int trial = 0; trial < 5000; ++trial) {
      const PairState s = testing::random_pair_state(rng);
      const BStepOutcome out = bstep(s);
      const PairState& t = out.state;
      if (std::abs(t.q_i + t.q_x + t.q_y + t.q_z - 1.0) >= 1e-12) ++conservation;
      if (s.q_i + s.q_z >= 0.5) {
        ++amplification_checked;
        if (t.big_delta < s.big_delta - 1e-12) ++amplification;
      }
      if (s.q_x + s.q_y <= 0.5) {
        ++contraction_checked;
        if (t.q_x + t.q_y > s.q_x + s.q_y + 1e-12) ++contraction;
      }
    }
    const bool pass = conservation == 0 && amplification == 0 && contraction == 0 &&
                      amplification_checked >= 1000 && contraction_checked >= 1000;
    report(8, pass,
           "conservation/amplification/contraction violations: " + std::to_string(conservation) + "/" +
               std::to_string(amplification) + "/" + std::to_string(contraction) + " (" +
               std::to_string(amplification_checked) + " and " + std::to_string(contraction_checked) +
               " states checked)");
  }

  // 9. Region boundaries against closed forms.
  {
    std::vector<double> deltas;
    for (int k = 0; k <= 100; ++k) deltas.push_back(0.005 * k);
    double worst = 0.0;
    bool ordered = true;
    for (Protocol protocol : {Protocol::FourState, Protocol::SixState}) {
      const auto points = region_curves(protocol, deltas);
      for (const RegionPoint& p : points) {
        const double d = p.delta;
        const double black = protocol == Protocol::FourState ? 1.0 - 4.0 * d : 1.0 - 3.0 * d;
        const double grey =
            protocol == Protocol::FourState ? 1.0 - 5.0 * d : (2.0 - 5.0 * d - std::sqrt(5.0) * d) / 2.0;
        worst = std::max({worst, std::abs(p.big_delta_black - std::max(0.0, black)),
                          std::abs(p.big_delta_grey - std::max(0.0, grey))});
        ordered = ordered && p.big_delta_grey <= p.big_delta_black;
      }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "region curves max deviation %.3e < 1e-12, grey <= black: %s", worst,
                  ordered ? "yes" : "no");
    report(9, worst < 1e-12 && ordered, buf);
  }

  // 10. Without dark counts there is no sudden drop.
  {
    LinkParams dark_free = kth;
    dark_free.p_dark = 0.0;
    const double reach = max_distance(Protocol::FourState, dark_free, 0, standard);
    report(10, reach >= four[0] + 10.0,
           "dark-count-free four-state reach " + km(reach) + " exceeds " + km(four[0]) + " by >= 10 km");
  }

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
