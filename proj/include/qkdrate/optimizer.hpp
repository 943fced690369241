#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qkdrate/decoy.hpp"
#include "qkdrate/keyrate.hpp"
#include "qkdrate/link_model.hpp"
#include "qkdrate/pair_state.hpp"

namespace qkdrate {

enum class PipelineKind { Standard, Decoy };

/// Which tagging estimate feeds the rate: the worst-case multiphoton fraction
/// of a plain weak-coherent source, or the decoy-state bound. The decoy
/// pipeline runs at the fixed signal intensity `decoy.mu`.
struct Pipeline {
  PipelineKind kind = PipelineKind::Standard;
  DecoyParams decoy{};

  static Pipeline standard() { return {}; }
  static Pipeline with_decoys(const DecoyParams& params) { return {PipelineKind::Decoy, params}; }
};

struct OptimizerConfig {
  double mu_min = 1e-4;
  double mu_max = 2.0;
  int grid_points = 64;               ///< log-spaced coarse grid over [mu_min, mu_max]
  double mu_tolerance = 1e-9;         ///< golden-section bracket width
  double distance_resolution = 0.1;   ///< km
  double scan_step = 1.0;             ///< km, coarse distance scan before bisection
  double max_search_distance = 400.0; ///< km
  double rate_floor = kRatePositivityFloor;
  int max_rounds = kDefaultMaxRounds;
  int bound_grid_points = 2000;       ///< mu grid for bound_distance
  unsigned threads = 0;               ///< 0 = hardware concurrency

  void validate() const;
};

/// Everything known about one (distance, mu, rounds) evaluation.
struct PointEvaluation {
  double rate = 0.0;
  double mu = 0.0;
  double delta = 0.0;
  double big_delta = 0.0;
  double p_exp = 0.0;
  FeasibilityClass feasibility = FeasibilityClass::Infeasible;
  std::optional<DecoyBounds> decoy;
};

/// Rate of the pipeline at a given mean photon number (ignored by the decoy
/// pipeline, which uses decoy.mu). A dead link or an unrepresentable error
/// rate yields rate 0.
PointEvaluation evaluate_point(Protocol protocol, const LinkParams& link, double mu,
                               double l_km, int rounds, const Pipeline& pipeline,
                               const OptimizerConfig& config = {});

struct MuOptimum {
  double mu_star = 0.0;
  double rate_star = 0.0;
};

/// Maximizes the rate over mu: coarse log grid, then golden-section search in
/// the bracket around the best grid point. Returns the interval midpoint and
/// rate 0 when no mu gives a positive rate.
MuOptimum optimize_mu(Protocol protocol, const LinkParams& link, double l_km, int rounds,
                      const Pipeline& pipeline, const OptimizerConfig& config = {});

struct SweepRow {
  double l_km = 0.0;
  int n = 0;
  double mu_star = 0.0;
  double rate = 0.0;
  double delta = 0.0;
  double big_delta = 0.0;
  FeasibilityClass feasibility = FeasibilityClass::Infeasible;
  std::optional<DecoyBounds> decoy;
};

/// Distances l_min, l_min + step, ... up to l_max (inclusive within 1e-9 step).
std::vector<double> distance_grid(double l_min, double l_max, double step);

/// One row per (distance, rounds) pair with per-point mu optimization.
/// Points are evaluated concurrently; rows are sorted by (l, n).
std::vector<SweepRow> rate_sweep(Protocol protocol, const LinkParams& link, double l_min,
                                 double l_max, double step, std::span<const int> rounds,
                                 const Pipeline& pipeline, const OptimizerConfig& config = {});

/// Largest distance (to config.distance_resolution) with an optimized rate
/// above config.rate_floor; 0 if there is none even at l = 0.
double max_distance(Protocol protocol, const LinkParams& link, int rounds,
                    const Pipeline& pipeline, const OptimizerConfig& config = {});

enum class BoundKind { Entanglement, BStepCss };

/// Largest distance at which some mu in the search interval satisfies the
/// entanglement condition or the B-step purification condition.
double bound_distance(Protocol protocol, const LinkParams& link, BoundKind bound,
                      const OptimizerConfig& config = {});

struct RegionPoint {
  double delta = 0.0;
  double big_delta_black = 0.0;   ///< entanglement boundary, clamped at 0
  double big_delta_grey = 0.0;    ///< purification boundary, clamped at 0
};

/// Boundary curves of the (delta, Delta) feasibility regions.
/// Throws std::invalid_argument for grid values outside [0, 1/2].
std::vector<RegionPoint> region_curves(Protocol protocol, std::span<const double> deltas);

}  // namespace qkdrate
