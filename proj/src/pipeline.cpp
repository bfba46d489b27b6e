#include "renewal/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace renewal {

namespace {

ExpectedHit hitting_time(const ChainSchedule& chain, std::int64_t start) {
  if (start == 0) return ExpectedHit{};
  return expected_theta0_auto(chain, start);
}

}  // namespace

Pipeline run_bound_pipeline(const RunConfig& config) {
  ChainSchedule chain1 = build_chain(config.spec1, "chain1");
  ChainSchedule chain2 = build_chain(config.spec2, "chain2");

  const double g0 = gamma0(chain1, chain2);
  const double c = sup_updown_product(chain1, chain2);
  const double p = select_p(c, g0, config.p_mode, config.fixed_p);

  const ExpectedHit e1 = hitting_time(chain1, config.start_states[0]);
  const ExpectedHit e2 = hitting_time(chain2, config.start_states[1]);

  BoundReport report =
      make_bound_report(g0, c, p, config.n0, e1, e2, config.gamma_override);
  return Pipeline{std::move(chain1), std::move(chain2), std::move(report)};
}

RenewalFloorReport run_certificate(const Pipeline& pipeline, const CertParams& cert) {
  return check_renewal_floor(pipeline.chain1, pipeline.chain2, pipeline.report.gamma,
                           pipeline.report.n0, cert.t_max, cert.n_max);
}

std::int64_t derive_horizon(const RunConfig& config, const BoundReport& report) {
  if (config.horizon > 0) return config.horizon;
  std::int64_t horizon =
      static_cast<std::int64_t>(std::ceil(100.0 * report.bound_general));
  for (std::int64_t m : config.probe_times)
    horizon = std::max(horizon, m + 2);
  return std::max<std::int64_t>(horizon, 64);
}

SimConfig make_sim_config(const RunConfig& config, const Pipeline& pipeline) {
  SimConfig sim{pipeline.chain1, pipeline.chain2};
  sim.start1 = config.start_states[0];
  sim.start2 = config.start_states[1];
  sim.horizon = derive_horizon(config, pipeline.report);
  sim.n_reps = config.n_reps;
  sim.seed = config.seed;
  sim.n0 = config.n0;
  sim.probe_times = config.probe_times;
  sim.censoring_budget = config.censoring_budget;
  return sim;
}

double applicable_bound(const BoundReport& report) {
  return report.bound_start_at_zero ? *report.bound_start_at_zero : report.bound_general;
}

const char* applicable_bound_name(const BoundReport& report) {
  return report.bound_start_at_zero ? "start_at_zero" : "general";
}

VerifyReport run_verify(const RunConfig& config) {
  const Pipeline pipeline = run_bound_pipeline(config);

  VerifyReport report;
  report.bound = pipeline.report;

  // Tail domination over the start-time grid, both chains.
  const int law_n = config.cert.n_max;
  const DominatingLaw dominant = dominating_sequence(
      pipeline.report.p, std::max(law_n, auto_horizon(pipeline.report.p)));
  const ChainSchedule* chains[2] = {&pipeline.chain1, &pipeline.chain2};
  for (int l = 0; l < 2; ++l) {
    const DominationGridReport grid = check_domination_grid(
        *chains[l], dominant, config.cert.domination_t0_max, law_n);
    VerifyCheck check;
    check.name = std::string("tail_domination_chain") + (l == 0 ? "1" : "2");
    check.pass = grid.pass;
    check.evidence = {{"max_violation", grid.max_violation},
                      {"argmax_t0", grid.argmax_t0},
                      {"argmax_n", grid.argmax_n},
                      {"t0_max", config.cert.domination_t0_max},
                      {"n_max", law_n}};
    report.checks.push_back(std::move(check));
  }

  // Renewal-sequence floor over the certificate grid.
  report.cert = run_certificate(pipeline, config.cert);
  {
    VerifyCheck check;
    check.name = "renewal_floor_certificate";
    check.pass = report.cert.pass;
    check.evidence = {{"gamma", report.cert.gamma},
                      {"min_u", report.cert.min_u},
                      {"argmin_t", report.cert.argmin_t},
                      {"argmin_n", report.cert.argmin_n},
                      {"argmin_chain", report.cert.argmin_chain}};
    report.checks.push_back(std::move(check));
  }

  // Simulation-backed checks.
  const SimConfig sim_config = make_sim_config(config, pipeline);
  report.sim = estimate(sim_config);
  const SimSummary& sim = report.sim;

  {
    VerifyCheck check;
    check.name = "censoring_within_budget";
    check.pass = sim.censoring_ok;
    check.evidence = {{"censored_reps", sim.censored_reps},
                      {"rate", sim.censoring_rate},
                      {"budget", config.censoring_budget}};
    report.checks.push_back(std::move(check));
  }
  {
    VerifyCheck check;
    check.name = "pathwise_decomposition";
    check.pass = sim.decomp_checked > 0 && sim.decomp_violations == 0;
    check.evidence = {{"checked", sim.decomp_checked},
                      {"violations", sim.decomp_violations}};
    report.checks.push_back(std::move(check));
  }
  {
    VerifyCheck check;
    check.name = "trial_tail_geometric";
    check.pass = true;
    nlohmann::json rows = nlohmann::json::array();
    for (const TailPoint& pt : sim.tail_tau) {
      const double limit =
          std::pow(1.0 - pipeline.report.gamma, pt.n) + 4.0 * pt.std_error;
      const bool ok = pt.p_hat <= limit;
      check.pass = check.pass && ok;
      rows.push_back({{"n", pt.n},
                      {"p_hat", pt.p_hat},
                      {"limit", limit},
                      {"pass", ok}});
    }
    check.evidence = {{"points", rows}};
    report.checks.push_back(std::move(check));
  }
  {
    VerifyCheck check;
    check.name = "excess_mean_bounded";
    check.pass = true;
    nlohmann::json rows = nlohmann::json::array();
    const std::vector<SimEstimate>* means[2] = {&sim.mean_R_1, &sim.mean_R_2};
    for (int l = 0; l < 2; ++l) {
      for (std::size_t i = 0; i < sim.probe_times.size(); ++i) {
        const SimEstimate& est = (*means[l])[i];
        const double limit = pipeline.report.M + 4.0 * est.std_error;
        const bool ok = est.n > 0 && est.mean <= limit;
        check.pass = check.pass && ok;
        rows.push_back({{"chain", l + 1},
                        {"m", sim.probe_times[i]},
                        {"mean", est.mean},
                        {"limit", limit},
                        {"pass", ok}});
      }
    }
    check.evidence = {{"points", rows}};
    report.checks.push_back(std::move(check));
  }
  {
    VerifyCheck check;
    check.name = "expected_T_below_bound";
    const double bound = applicable_bound(pipeline.report);
    check.pass = sim.ET.n > 0 && sim.ET.ci_hi <= bound;
    check.evidence = {{"mean", sim.ET.mean},
                      {"ci_hi", sim.ET.ci_hi},
                      {"bound", bound},
                      {"bound_kind", applicable_bound_name(pipeline.report)}};
    report.checks.push_back(std::move(check));
  }

  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const VerifyCheck& c) { return c.pass; });
  return report;
}

}  // namespace renewal
