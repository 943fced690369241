#include "qkdrate/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdrate/csv.hpp"
#include "qkdrate/error.hpp"
#include "qkdrate/optimizer.hpp"
#include "qkdrate/ranges.hpp"

namespace qkdrate::cli {

namespace {

struct RunConfig {
  std::string protocol = "four";
  LinkParams link = kth_link();
  DecoyParams decoy{};
  OptimizerConfig optimizer{};
  std::string distances;
  std::string rounds;
  std::string deltas = "0:0.5:0.005";
  std::optional<double> fixed_mu;
  std::string out_path;
};

void add_link_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--protocol", cfg.protocol, "four or six")->capture_default_str();
  app.add_option("--alpha", cfg.link.alpha, "fiber loss [dB/km]")->capture_default_str();
  app.add_option("--lc", cfg.link.l_c, "distance-independent loss [dB]")->capture_default_str();
  app.add_option("--eta-det", cfg.link.eta_det, "detector efficiency")->capture_default_str();
  app.add_option("--p-dark", cfg.link.p_dark, "dark-count probability")->capture_default_str();
  app.add_option("--delta0", cfg.link.delta_0, "baseline optical error")->capture_default_str();
  app.add_option("--out", cfg.out_path, "write CSV to this file instead of stdout");
}

void add_search_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--mu-min", cfg.optimizer.mu_min, "lower end of the mu search interval")->capture_default_str();
  app.add_option("--mu-max", cfg.optimizer.mu_max, "upper end of the mu search interval")->capture_default_str();
  app.add_option("--rate-floor", cfg.optimizer.rate_floor, "rates at or below count as zero")->capture_default_str();
  app.add_option("--resolution", cfg.optimizer.distance_resolution, "distance resolution [km]")
      ->capture_default_str();
  app.add_option("--max-search", cfg.optimizer.max_search_distance, "largest distance searched [km]")
      ->capture_default_str();
  app.add_option("--threads", cfg.optimizer.threads, "worker threads for sweeps (0 = all cores)");
}

void add_decoy_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--mu", cfg.decoy.mu, "signal mean photon number")->capture_default_str();
  app.add_option("--kappa", cfg.decoy.kappa, "weak decoy mean photon number")->capture_default_str();
  app.add_option("--nu", cfg.decoy.nu, "strong decoy mean photon number")->capture_default_str();
}

std::string describe(const std::string& command, const RunConfig& cfg, bool decoy) {
  std::ostringstream s;
  s << "qkdrate " << command << " protocol=" << to_string(parse_protocol(cfg.protocol))
    << " pipeline=" << (decoy ? "decoy" : "standard") << " alpha=" << format_exact(cfg.link.alpha)
    << " l_c=" << format_exact(cfg.link.l_c) << " eta_det=" << format_exact(cfg.link.eta_det)
    << " p_dark=" << format_exact(cfg.link.p_dark) << " delta_0=" << format_exact(cfg.link.delta_0)
    << " mu_min=" << format_exact(cfg.optimizer.mu_min) << " mu_max=" << format_exact(cfg.optimizer.mu_max)
    << " rate_floor=" << format_exact(cfg.optimizer.rate_floor)
    << " resolution_km=" << format_exact(cfg.optimizer.distance_resolution)
    << " max_search_km=" << format_exact(cfg.optimizer.max_search_distance);
  if (decoy) {
    s << " mu=" << format_exact(cfg.decoy.mu) << " kappa=" << format_exact(cfg.decoy.kappa)
      << " nu=" << format_exact(cfg.decoy.nu);
  } else if (cfg.fixed_mu) {
    s << " mu=" << format_exact(*cfg.fixed_mu);
  }
  const bool per_distance = command.ends_with("rate") || command.ends_with("sweep");
  const bool per_round = per_distance || command.ends_with("max-distance");
  if (per_distance && !cfg.distances.empty()) s << " l=" << cfg.distances;
  if (per_round && !cfg.rounds.empty()) s << " n=" << cfg.rounds;
  if (command == "region") s << " delta=" << cfg.deltas;
  return s.str();
}

Pipeline pipeline_of(const RunConfig& cfg, bool decoy) {
  return decoy ? Pipeline::with_decoys(cfg.decoy) : Pipeline::standard();
}

void validate(const RunConfig& cfg, bool decoy) {
  cfg.link.validate();
  cfg.optimizer.validate();
  if (decoy) cfg.decoy.validate();
  if (cfg.fixed_mu && !(*cfg.fixed_mu > 0.0)) throw std::invalid_argument("mu must be > 0");
}

std::vector<std::string> sweep_fields(const SweepRow& row, bool decoy) {
  std::vector<std::string> fields{format_value(row.l_km),     std::to_string(row.n),
                                  format_value(row.mu_star),  format_rate(row.rate),
                                  format_value(row.delta),    format_value(row.big_delta),
                                  std::string(to_string(row.feasibility))};
  if (decoy) {
    const DecoyBounds bounds = row.decoy.value_or(DecoyBounds{});
    fields.push_back(format_value(bounds.s1_lower));
    fields.push_back(format_value(bounds.big_delta_upper));
  }
  return fields;
}

void write_sweep(std::ostream& out, const std::string& comment, const std::vector<SweepRow>& rows, bool decoy) {
  std::optional<CsvWriter> csv;
  if (decoy) {
    csv.emplace(out, comment,
                std::initializer_list<std::string_view>{"l_km", "n", "mu_star", "rate", "delta", "Delta",
                                                        "feasibility", "s1_lower", "Delta_mu_upper"});
  } else {
    csv.emplace(out, comment,
                std::initializer_list<std::string_view>{"l_km", "n", "mu_star", "rate", "delta", "Delta",
                                                        "feasibility"});
  }
  for (const SweepRow& row : rows) csv->row(sweep_fields(row, decoy));
}

void run_rate(std::ostream& out, const RunConfig& cfg, bool decoy) {
  const Protocol protocol = parse_protocol(cfg.protocol);
  const std::vector<double> distances = parse_range(cfg.distances);
  const std::vector<int> rounds = parse_rounds(cfg.rounds);
  const Pipeline pipeline = pipeline_of(cfg, decoy);

  std::vector<SweepRow> rows;
  if (cfg.fixed_mu && !decoy) {
    for (double l : distances) {
      for (int n : rounds) {
        const PointEvaluation point = evaluate_point(protocol, cfg.link, *cfg.fixed_mu, l, n, pipeline, cfg.optimizer);
        rows.push_back(SweepRow{.l_km = l, .n = n, .mu_star = point.mu, .rate = point.rate, .delta = point.delta,
                                .big_delta = point.big_delta, .feasibility = point.feasibility, .decoy = point.decoy});
      }
    }
  } else {
    for (double l : distances) {
      const auto point_rows = rate_sweep(protocol, cfg.link, l, l, 1.0, rounds, pipeline, cfg.optimizer);
      rows.insert(rows.end(), point_rows.begin(), point_rows.end());
    }
  }
  write_sweep(out, describe(decoy ? "decoy rate" : "rate", cfg, decoy), rows, decoy);
}

void run_sweep(std::ostream& out, const RunConfig& cfg, bool decoy) {
  const Protocol protocol = parse_protocol(cfg.protocol);
  const std::vector<double> distances = parse_range(cfg.distances);
  const std::vector<int> rounds = parse_rounds(cfg.rounds);
  const double step = distances.size() > 1 ? distances[1] - distances[0] : 1.0;
  const auto rows = rate_sweep(protocol, cfg.link, distances.front(), distances.back(), step, rounds,
                               pipeline_of(cfg, decoy), cfg.optimizer);
  write_sweep(out, describe(decoy ? "decoy sweep" : "sweep", cfg, decoy), rows, decoy);
}

void run_max_distance(std::ostream& out, const RunConfig& cfg, bool decoy) {
  const Protocol protocol = parse_protocol(cfg.protocol);
  const std::vector<int> rounds = parse_rounds(cfg.rounds);
  const Pipeline pipeline = pipeline_of(cfg, decoy);
  const std::string comment = describe(decoy ? "decoy max-distance" : "max-distance", cfg, decoy);

  if (!decoy) {
    CsvWriter csv(out, comment, {"n", "l_max_km"});
    for (int n : rounds) {
      csv.row({std::to_string(n), format_value(max_distance(protocol, cfg.link, n, pipeline, cfg.optimizer))});
    }
    return;
  }
  CsvWriter csv(out, comment, {"n", "l_max_km", "s1_lower", "Delta_mu_upper"});
  for (int n : rounds) {
    const double l_max = max_distance(protocol, cfg.link, n, pipeline, cfg.optimizer);
    const DecoyRate at_limit = decoy_rate(protocol, cfg.link, cfg.decoy, l_max, n, cfg.optimizer.max_rounds);
    csv.row({std::to_string(n), format_value(l_max), format_value(at_limit.bounds.s1_lower),
             format_value(at_limit.bounds.big_delta_upper)});
  }
}

void run_bounds(std::ostream& out, const RunConfig& cfg) {
  const Protocol protocol = parse_protocol(cfg.protocol);
  CsvWriter csv(out, describe("bounds", cfg, false), {"bound", "l_km"});
  csv.row({"entanglement", format_value(bound_distance(protocol, cfg.link, BoundKind::Entanglement, cfg.optimizer))});
  csv.row({"bstep_css", format_value(bound_distance(protocol, cfg.link, BoundKind::BStepCss, cfg.optimizer))});
}

void run_region(std::ostream& out, const RunConfig& cfg) {
  const Protocol protocol = parse_protocol(cfg.protocol);
  const std::vector<double> deltas = parse_range(cfg.deltas);
  CsvWriter csv(out, describe("region", cfg, false), {"delta", "Delta_black", "Delta_grey"});
  for (const RegionPoint& p : region_curves(protocol, deltas)) {
    csv.row({format_value(p.delta), format_value(p.big_delta_black), format_value(p.big_delta_grey)});
  }
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Asymptotic secret-key rates of QKD with tagging, dark counts and two-way B-steps", "qkdrate"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto* rate = app.add_subcommand("rate", "key rate at one distance (mu optimized unless --mu is given)");
  add_link_options(*rate, cfg);
  add_search_options(*rate, cfg);
  rate->add_option("--l", cfg.distances, "distance [km] or start:stop:step")->required();
  rate->add_option("--n", cfg.rounds, "B-step rounds, e.g. 0,1,2 or 0..4")->default_val("0");
  rate->add_option("--mu", cfg.fixed_mu, "fixed mean photon number");

  auto* sweep = app.add_subcommand("sweep", "key rate versus distance, one row per (l, n)");
  add_link_options(*sweep, cfg);
  add_search_options(*sweep, cfg);
  sweep->add_option("--l", cfg.distances, "start:stop:step [km]")->default_val("0:50:1");
  sweep->add_option("--n", cfg.rounds, "B-step rounds")->default_val("0");

  auto* maxd = app.add_subcommand("max-distance", "largest distance with a positive rate, per n");
  add_link_options(*maxd, cfg);
  add_search_options(*maxd, cfg);
  maxd->add_option("--n", cfg.rounds, "B-step rounds")->default_val("0..10");

  auto* bounds = app.add_subcommand("bounds", "distance limits from the entanglement and purification conditions");
  add_link_options(*bounds, cfg);
  add_search_options(*bounds, cfg);

  auto* region = app.add_subcommand("region", "boundary curves in the (delta, Delta) plane");
  region->add_option("--protocol", cfg.protocol, "four or six")->capture_default_str();
  region->add_option("--delta", cfg.deltas, "start:stop:step QBER grid")->capture_default_str();
  region->add_option("--out", cfg.out_path, "write CSV to this file instead of stdout");

  auto* decoy = app.add_subcommand("decoy", "decoy-state variants of rate, sweep and max-distance");
  decoy->require_subcommand(1);
  auto* decoy_rate_cmd = decoy->add_subcommand("rate", "decoy-state key rate at one distance");
  auto* decoy_sweep = decoy->add_subcommand("sweep", "decoy-state key rate versus distance");
  auto* decoy_maxd = decoy->add_subcommand("max-distance", "decoy-state maximum distance per n");
  for (auto* sub : {decoy_rate_cmd, decoy_sweep, decoy_maxd}) {
    add_link_options(*sub, cfg);
    add_search_options(*sub, cfg);
    add_decoy_options(*sub, cfg);
  }
  decoy_rate_cmd->add_option("--l", cfg.distances, "distance [km] or start:stop:step")->required();
  decoy_rate_cmd->add_option("--n", cfg.rounds, "B-step rounds")->default_val("0");
  decoy_sweep->add_option("--l", cfg.distances, "start:stop:step [km]")->default_val("0:120:1");
  decoy_sweep->add_option("--n", cfg.rounds, "B-step rounds")->default_val("0");
  decoy_maxd->add_option("--n", cfg.rounds, "B-step rounds")->default_val("0..10");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsageError;
  }

  try {
    std::ofstream file;
    if (!cfg.out_path.empty()) {
      file.open(cfg.out_path, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot open output file '" + cfg.out_path + "'");
    }
    std::ostream& sink = cfg.out_path.empty() ? out : file;

    if (rate->parsed()) {
      validate(cfg, false);
      run_rate(sink, cfg, false);
    } else if (sweep->parsed()) {
      validate(cfg, false);
      run_sweep(sink, cfg, false);
    } else if (maxd->parsed()) {
      validate(cfg, false);
      run_max_distance(sink, cfg, false);
    } else if (bounds->parsed()) {
      validate(cfg, false);
      run_bounds(sink, cfg);
    } else if (region->parsed()) {
      run_region(sink, cfg);
    } else if (decoy_rate_cmd->parsed()) {
      validate(cfg, true);
      run_rate(sink, cfg, true);
    } else if (decoy_sweep->parsed()) {
      validate(cfg, true);
      run_sweep(sink, cfg, true);
    } else if (decoy_maxd->parsed()) {
      validate(cfg, true);
      run_max_distance(sink, cfg, true);
    }
    sink.flush();
    if (!sink) throw computation_error("failed to write output");
  } catch (const std::invalid_argument& e) {
    err << "qkdrate: invalid argument: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "qkdrate: error: " << e.what() << '\n';
    return kExitComputationError;
  }
  return kExitOk;
}

}  // namespace qkdrate::cli
