#include "qkdrate/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>

#include "qkdrate/bstep.hpp"
#include "qkdrate/error.hpp"

namespace qkdrate {

void OptimizerConfig::validate() const {
  if (!(mu_min > 0.0 && mu_min < mu_max)) throw std::invalid_argument("mu interval must satisfy 0 < mu_min < mu_max");
  if (grid_points < 3) throw std::invalid_argument("mu grid needs at least 3 points");
  if (!(mu_tolerance > 0.0)) throw std::invalid_argument("mu tolerance must be > 0");
  if (!(distance_resolution > 0.0)) throw std::invalid_argument("distance resolution must be > 0");
  if (!(scan_step > 0.0)) throw std::invalid_argument("distance scan step must be > 0");
  if (!(max_search_distance > 0.0)) throw std::invalid_argument("maximum search distance must be > 0");
  if (!(rate_floor >= 0.0)) throw std::invalid_argument("rate floor must be >= 0");
  if (max_rounds < 0) throw std::invalid_argument("maximum B-step rounds must be >= 0");
  if (bound_grid_points < 2) throw std::invalid_argument("bound grid needs at least 2 points");
}

namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double log_lo = std::log(lo);
  const double log_step = (std::log(hi) - log_lo) / (points - 1);
  for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = std::exp(log_lo + k * log_step);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

// Golden-section maximization of a unimodal function on [lo, hi].
template <typename F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tolerance) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

// Largest l in [0, max_search_distance] with predicate(l) true: coarse scan
// over the whole interval, then bisection above the last passing scan point.
template <typename Pred>
double last_true_distance(Pred&& predicate, const OptimizerConfig& config) {
  if (!predicate(0.0)) return 0.0;
  const auto steps = static_cast<int>(std::floor(config.max_search_distance / config.scan_step + 1e-9));
  double lo = 0.0;
  for (int k = 1; k <= steps; ++k) {
    const double l = k * config.scan_step;
    if (predicate(l)) lo = l;
  }
  double hi = std::min(lo + config.scan_step, config.max_search_distance);
  if (hi <= lo || predicate(hi)) return hi;
  while (hi - lo > config.distance_resolution) {
    const double mid = 0.5 * (lo + hi);
    (predicate(mid) ? lo : hi) = mid;
  }
  return lo;
}

unsigned worker_count(const OptimizerConfig& config, std::size_t jobs) {
  unsigned threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);
  return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs, 1)));
}

}  // namespace

PointEvaluation evaluate_point(Protocol protocol, const LinkParams& link, double mu, double l_km,
                               int rounds, const Pipeline& pipeline, const OptimizerConfig& config) {
  if (rounds < 0 || rounds > config.max_rounds) {
    throw std::invalid_argument("number of B-step rounds must lie in [0, " +
                                std::to_string(config.max_rounds) + "]");
  }
  PointEvaluation point;
  point.mu = pipeline.kind == PipelineKind::Decoy ? pipeline.decoy.mu : mu;

  LinkObservables obs;
  try {
    obs = link_observables(link, point.mu, l_km);
  } catch (const computation_error&) {
    return point;
  }
  point.delta = obs.delta;
  point.p_exp = obs.p_exp;
  point.big_delta = obs.big_delta;

  if (pipeline.kind == PipelineKind::Decoy) {
    try {
      const DecoyRate decoy = decoy_rate(protocol, link, pipeline.decoy, l_km, rounds, config.max_rounds);
      point.rate = decoy.rate;
      point.big_delta = decoy.bounds.big_delta_upper;
      point.decoy = decoy.bounds;
    } catch (const computation_error&) {
      point.rate = 0.0;
    }
  } else if (point.big_delta < 1.0) {
    try {
      const PairState initial = initial_pair_state(protocol, obs.delta, obs.big_delta);
      const BStepTrajectory trajectory = iterate_bsteps(initial, rounds, config.max_rounds);
      point.rate = rate_bcss(obs.p_exp, basis_count(protocol), trajectory);
    } catch (const computation_error&) {
      point.rate = 0.0;
    }
  }
  point.feasibility = classify_feasibility(protocol, std::min(point.delta, 0.5), point.big_delta);
  return point;
}

MuOptimum optimize_mu(Protocol protocol, const LinkParams& link, double l_km, int rounds,
                      const Pipeline& pipeline, const OptimizerConfig& config) {
  config.validate();
  if (!(l_km >= 0.0)) throw std::invalid_argument("fiber length must be >= 0");
  auto rate_at = [&](double mu) {
    return evaluate_point(protocol, link, mu, l_km, rounds, pipeline, config).rate;
  };

  if (pipeline.kind == PipelineKind::Decoy) {
    const double mu = pipeline.decoy.mu;
    return {mu, rate_at(mu)};
  }

  const std::vector<double> grid = log_grid(config.mu_min, config.mu_max, config.grid_points);
  std::vector<double> rates(grid.size());
  std::transform(grid.begin(), grid.end(), rates.begin(), rate_at);
  const auto best = static_cast<std::size_t>(std::max_element(rates.begin(), rates.end()) - rates.begin());
  if (!(rates[best] > 0.0)) return {0.5 * (config.mu_min + config.mu_max), 0.0};

  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  const auto [mu, rate] = golden_section_max(rate_at, lo, hi, config.mu_tolerance);
  if (rate > rates[best]) return {mu, rate};
  return {grid[best], rates[best]};
}

std::vector<double> distance_grid(double l_min, double l_max, double step) {
  if (!(l_min >= 0.0)) throw std::invalid_argument("distance range must start at l >= 0");
  if (!(l_min <= l_max)) throw std::invalid_argument("distance range must satisfy l_min <= l_max");
  if (!(step > 0.0)) throw std::invalid_argument("distance step must be > 0");
  const auto count = static_cast<std::size_t>(std::floor((l_max - l_min) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = l_min + static_cast<double>(k) * step;
  return grid;
}

std::vector<SweepRow> rate_sweep(Protocol protocol, const LinkParams& link, double l_min,
                                 double l_max, double step, std::span<const int> rounds,
                                 const Pipeline& pipeline, const OptimizerConfig& config) {
  config.validate();
  link.validate();
  if (pipeline.kind == PipelineKind::Decoy) pipeline.decoy.validate();
  for (int n : rounds) {
    if (n < 0 || n > config.max_rounds) {
      throw std::invalid_argument("number of B-step rounds must lie in [0, " +
                                  std::to_string(config.max_rounds) + "]");
    }
  }
  const std::vector<double> distances = distance_grid(l_min, l_max, step);

  std::vector<SweepRow> rows;
  for (double l : distances) {
    for (int n : rounds) {
      SweepRow row;
      row.l_km = l;
      row.n = n;
      rows.push_back(row);
    }
  }

  auto fill = [&](SweepRow& row) {
    const MuOptimum best = optimize_mu(protocol, link, row.l_km, row.n, pipeline, config);
    const PointEvaluation point = evaluate_point(protocol, link, best.mu_star, row.l_km, row.n, pipeline, config);
    row.mu_star = best.mu_star;
    row.rate = best.rate_star;
    row.delta = point.delta;
    row.big_delta = point.big_delta;
    row.feasibility = point.feasibility;
    row.decoy = point.decoy;
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) fill(rows[k]);
  };
  const unsigned threads = worker_count(config, rows.size());
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.l_km, a.n) < std::tie(b.l_km, b.n);
  });
  return rows;
}

double max_distance(Protocol protocol, const LinkParams& link, int rounds, const Pipeline& pipeline,
                    const OptimizerConfig& config) {
  config.validate();
  link.validate();
  if (rounds < 0 || rounds > config.max_rounds) {
    throw std::invalid_argument("number of B-step rounds must lie in [0, " +
                                std::to_string(config.max_rounds) + "]");
  }
  auto positive = [&](double l) {
    return optimize_mu(protocol, link, l, rounds, pipeline, config).rate_star > config.rate_floor;
  };
  return last_true_distance(positive, config);
}

double bound_distance(Protocol protocol, const LinkParams& link, BoundKind bound,
                      const OptimizerConfig& config) {
  config.validate();
  link.validate();
  const std::vector<double> grid = log_grid(config.mu_min, config.mu_max, config.bound_grid_points);
  auto satisfied = [&](double l) {
    for (double mu : grid) {
      LinkObservables obs;
      try {
        obs = link_observables(link, mu, l);
      } catch (const computation_error&) {
        continue;
      }
      if (obs.big_delta >= 1.0) continue;
      const bool ok = bound == BoundKind::Entanglement
                          ? obs.delta / (1.0 - obs.big_delta) < entanglement_threshold(protocol)
                          : obs.big_delta < purification_bound(protocol, obs.delta);
      if (ok) return true;
    }
    return false;
  };
  return last_true_distance(satisfied, config);
}

std::vector<RegionPoint> region_curves(Protocol protocol, std::span<const double> deltas) {
  std::vector<RegionPoint> points;
  points.reserve(deltas.size());
  for (double delta : deltas) {
    if (!(delta >= 0.0 && delta <= 0.5)) throw std::invalid_argument("QBER grid values must lie in [0, 1/2]");
    points.push_back(RegionPoint{
        .delta = delta,
        .big_delta_black = std::max(0.0, entanglement_bound(protocol, delta)),
        .big_delta_grey = std::max(0.0, purification_bound(protocol, delta)),
    });
  }
  return points;
}

}  // namespace qkdrate
