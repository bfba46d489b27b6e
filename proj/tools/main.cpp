// Command-line front end: bound / simulate / verify / sweep.
//
// Exit codes: 0 ok, 1 verify check failed, 2 invalid config or usage,
// 3 domination infeasible, 4 renewal-floor certificate failed,
// 5 censoring budget exceeded.

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "renewal/config.hpp"
#include "renewal/pipeline.hpp"
#include "renewal/serialize.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitCertFailed = 4;
constexpr int kExitCensoring = 5;

void apply_thread_cap() {
  if (const char* env = std::getenv("RENEWAL_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1)
      omp_set_num_threads(static_cast<int>(n));
  }
}

struct CommonOptions {
  std::string config_path;
  std::optional<std::int64_t> seed;
  std::optional<std::int64_t> reps;
  std::string out_dir;
  std::string format = "json";
};

renewal::RunConfig load_config(const CommonOptions& opts) {
  renewal::RunConfig config = renewal::load_run_config(opts.config_path);
  if (opts.seed) {
    if (*opts.seed < 0) throw renewal::ConfigError("--seed must be >= 0");
    config.seed = static_cast<std::uint64_t>(*opts.seed);
  }
  if (opts.reps) {
    if (*opts.reps < 0) throw renewal::ConfigError("--reps must be >= 0");
    config.n_reps = *opts.reps;
  }
  return config;
}

std::string join_out(const std::string& out_dir, const std::string& path) {
  if (out_dir.empty() || path.empty() || path.front() == '/') return path;
  return out_dir + "/" + path;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw renewal::ConfigError("cannot write output file: " + path);
  out << content;
}

void emit_report(const nlohmann::json& doc, const CommonOptions& opts,
                 const std::optional<std::string>& file_path) {
  std::string text;
  if (opts.format == "csv") {
    std::ostringstream os;
    renewal::write_flat_csv(os, doc);
    text = os.str();
  } else {
    text = doc.dump(2) + "\n";
  }
  std::cout << text;
  if (file_path) write_file(join_out(opts.out_dir, *file_path), text);
}

void emit_side_outputs(const renewal::RunConfig& config,
                       const renewal::Pipeline& pipeline,
                       const CommonOptions& opts) {
  if (config.outputs.laws_csv) {
    std::ostringstream os;
    const int n = config.cert.n_max;
    const renewal::ChainSchedule* chains[2] = {&pipeline.chain1, &pipeline.chain2};
    for (int l = 0; l < 2; ++l) {
      const auto law = renewal::first_return_law(*chains[l], 0, n);
      const auto seq = renewal::renewal_sequence(*chains[l], 0, n);
      renewal::write_laws_csv(os, l + 1, law, seq, l == 0);
    }
    write_file(join_out(opts.out_dir, *config.outputs.laws_csv), os.str());
  }
  if (config.outputs.dominant_csv) {
    const int horizon =
        std::max(config.cert.n_max, renewal::auto_horizon(pipeline.report.p));
    const auto dominant = renewal::dominating_sequence(pipeline.report.p, horizon);
    std::ostringstream os;
    renewal::write_dominant_csv(os, dominant);
    write_file(join_out(opts.out_dir, *config.outputs.dominant_csv), os.str());
  }
}

int cmd_bound(const CommonOptions& opts) {
  const renewal::RunConfig config = load_config(opts);
  const renewal::Pipeline pipeline = renewal::run_bound_pipeline(config);
  const renewal::RenewalFloorReport cert =
      renewal::run_certificate(pipeline, config.cert);
  emit_report(renewal::bound_report_json(pipeline.report, cert), opts,
              config.outputs.report);
  emit_side_outputs(config, pipeline, opts);
  return cert.pass ? 0 : kExitCertFailed;
}

int cmd_simulate(const CommonOptions& opts) {
  const renewal::RunConfig config = load_config(opts);
  if (config.n_reps < 1)
    throw renewal::ConfigError("simulate needs n_reps >= 1");

  std::optional<renewal::Pipeline> pipeline;
  try {
    pipeline = renewal::run_bound_pipeline(config);
  } catch (const renewal::InfeasibleDomination&) {
    // Without a bound there is no derived horizon; an explicit one keeps
    // the simulation usable on chains outside the domination regime.
    if (config.horizon < 1) throw;
  }

  renewal::SimConfig sim_config =
      pipeline ? renewal::make_sim_config(config, *pipeline)
               : renewal::SimConfig{renewal::build_chain(config.spec1, "chain1"),
                                    renewal::build_chain(config.spec2, "chain2")};
  if (!pipeline) {
    sim_config.start1 = config.start_states[0];
    sim_config.start2 = config.start_states[1];
    sim_config.horizon = config.horizon;
    sim_config.n_reps = config.n_reps;
    sim_config.seed = config.seed;
    sim_config.n0 = config.n0;
    sim_config.probe_times = config.probe_times;
    sim_config.censoring_budget = config.censoring_budget;
  }

  const auto records = renewal::run_replications(sim_config);
  const renewal::SimSummary summary = renewal::reduce_records(sim_config, records);

  nlohmann::json doc = renewal::summary_json(summary);
  if (pipeline) {
    const double bound = renewal::applicable_bound(pipeline->report);
    doc["bound"] = renewal::bound_report_json(pipeline->report);
    doc["verdict"] = {{"bound", bound},
                      {"bound_kind", renewal::applicable_bound_name(pipeline->report)},
                      {"et_ci_hi", summary.ET.ci_hi},
                      {"pass", summary.ET.n > 0 && summary.ET.ci_hi <= bound}};
  } else {
    doc["bound"] = nullptr;
    doc["verdict"] = nullptr;
  }
  emit_report(doc, opts, config.outputs.report);

  if (config.outputs.per_rep_csv) {
    std::ostringstream os;
    renewal::write_per_rep_csv(os, records);
    write_file(join_out(opts.out_dir, *config.outputs.per_rep_csv), os.str());
  }
  return summary.censoring_ok ? 0 : kExitCensoring;
}

int cmd_verify(const CommonOptions& opts) {
  const renewal::RunConfig config = load_config(opts);
  if (config.n_reps < 1)
    throw renewal::ConfigError("verify needs n_reps >= 1");
  const renewal::VerifyReport report = renewal::run_verify(config);
  for (const renewal::VerifyCheck& check : report.checks)
    std::cerr << (check.pass ? "[ PASS ] " : "[ FAIL ] ") << check.name << '\n';
  emit_report(renewal::verify_json(report), opts, config.outputs.report);
  return report.pass ? 0 : kExitVerifyFailed;
}

struct SweepOptions {
  std::string axis;
  std::string grid;
  bool with_sim = false;
};

std::vector<double> parse_grid(const std::string& text) {
  double lo = 0.0, hi = 0.0;
  long count = 0;
  char tail = '\0';
  const int matched =
      std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &count, &tail);
  if (matched != 3 || count < 1 || hi < lo)
    throw renewal::ConfigError("--grid must be LO:HI:COUNT with COUNT >= 1 and LO <= HI");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    grid.push_back(lo);
  } else {
    for (long k = 0; k < count; ++k)
      grid.push_back(lo + (hi - lo) * (static_cast<double>(k) /
                                       static_cast<double>(count - 1)));
  }
  return grid;
}

bool is_bounded_random(const renewal::ScheduleSpec& spec) {
  return std::holds_alternative<renewal::BoundedRandomSpec>(spec.payload);
}

renewal::ScheduleSpec patch_bounds(const renewal::ScheduleSpec& spec,
                                   const std::string& axis, double value) {
  const auto& br = std::get<renewal::BoundedRandomSpec>(spec.payload);
  const double lo = axis == "alpha_lo" ? value : br.lo;
  const double hi = axis == "alpha_hi" ? value : br.hi;
  return renewal::make_bounded_random(br.seed, lo, hi);
}

int cmd_sweep(const CommonOptions& opts, const SweepOptions& sweep) {
  const renewal::RunConfig config = load_config(opts);
  if (sweep.axis != "p" && sweep.axis != "alpha_lo" && sweep.axis != "alpha_hi")
    throw renewal::ConfigError("--axis must be p, alpha_lo or alpha_hi");
  if (sweep.axis != "p" &&
      !(is_bounded_random(config.spec1) && is_bounded_random(config.spec2)))
    throw renewal::ConfigError(
        "alpha sweeps require bounded-random schedules on both chains");
  const std::vector<double> grid = parse_grid(sweep.grid);

  std::ostringstream os;
  os << "axis,value,feasible,p,gamma0,c,gamma,M,bound";
  if (sweep.with_sim) os << ",et_mean,et_ci_hi";
  os << '\n';

  for (const double value : grid) {
    renewal::RunConfig row_config = config;
    std::optional<renewal::Pipeline> pipeline;
    if (sweep.axis == "p") {
      row_config.p_mode = renewal::PickMode::Fixed;
      row_config.fixed_p = value;
    } else {
      row_config.spec1 = patch_bounds(config.spec1, sweep.axis, value);
      row_config.spec2 = patch_bounds(config.spec2, sweep.axis, value);
    }

    const bool specs_valid =
        row_config.spec1.alpha_lo > 0.0 && row_config.spec1.alpha_hi < 1.0 &&
        row_config.spec1.alpha_lo <= row_config.spec1.alpha_hi &&
        (sweep.axis == "p" ? value > 0.5 && value < 1.0 : true);
    if (specs_valid) {
      try {
        pipeline = renewal::run_bound_pipeline(row_config);
      } catch (const renewal::InfeasibleDomination&) {
        pipeline.reset();
      }
    }

    os << sweep.axis << ',' << renewal::csv_double(value) << ','
       << (pipeline ? 1 : 0);
    if (pipeline) {
      const renewal::BoundReport& r = pipeline->report;
      os << ',' << renewal::csv_double(r.p) << ',' << renewal::csv_double(r.gamma0)
         << ',' << renewal::csv_double(r.c) << ',' << renewal::csv_double(r.gamma)
         << ',' << renewal::csv_double(r.M) << ','
         << renewal::csv_double(renewal::applicable_bound(r));
      if (sweep.with_sim) {
        const renewal::SimSummary summary =
            renewal::estimate(renewal::make_sim_config(row_config, *pipeline));
        os << ',' << renewal::csv_double(summary.ET.mean) << ','
           << renewal::csv_double(summary.ET.ci_hi);
      }
    } else {
      os << ",,,,,,";
      if (sweep.with_sim) os << ",,";
    }
    os << '\n';
  }

  std::cout << os.str();
  if (!opts.out_dir.empty()) write_file(opts.out_dir + "/sweep.csv", os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"Analytic bounds and Monte Carlo validation for the simultaneous "
               "renewal time of two inhomogeneous birth-death chains"};
  app.require_subcommand(1);

  CommonOptions opts;
  SweepOptions sweep;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "JSON configuration file")
        ->required();
    cmd->add_option("--seed", opts.seed, "override the configured RNG seed");
    cmd->add_option("--reps", opts.reps, "override the configured replication count");
    cmd->add_option("--out", opts.out_dir, "directory for file outputs");
    cmd->add_option("--format", opts.format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* bound = app.add_subcommand("bound", "compute the analytic bound report");
  add_common(bound);
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo estimate of the renewal time");
  add_common(simulate);
  CLI::App* verify =
      app.add_subcommand("verify", "run every bound and inequality check");
  add_common(verify);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "bound across a parameter grid");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--axis", sweep.axis, "sweep axis: p, alpha_lo or alpha_hi")
      ->required();
  sweep_cmd->add_option("--grid", sweep.grid, "grid as LO:HI:COUNT")->required();
  sweep_cmd->add_flag("--with-sim", sweep.with_sim,
                      "also simulate E[T] at each feasible grid point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigInvalid;
  }

  try {
    if (bound->parsed()) return cmd_bound(opts);
    if (simulate->parsed()) return cmd_simulate(opts);
    if (verify->parsed()) return cmd_verify(opts);
    return cmd_sweep(opts, sweep);
  } catch (const renewal::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigInvalid;
  } catch (const renewal::InfeasibleDomination& e) {
    std::cerr << "infeasible domination: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigInvalid;
  }
}
