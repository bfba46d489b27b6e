#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "renewal/bounds.hpp"
#include "renewal/config.hpp"
#include "renewal/first_return.hpp"
#include "renewal/simulator.hpp"

namespace renewal {

struct Pipeline {
  ChainSchedule chain1;
  ChainSchedule chain2;
  BoundReport report;
};

// gamma0 / c / p selection / moments / gamma / M / expected hitting times /
// bounds, for the configured chains. Throws InfeasibleDomination when no
// admissible p exists, ConfigError on bad schedules.
Pipeline run_bound_pipeline(const RunConfig& config);

RenewalFloorReport run_certificate(const Pipeline& pipeline, const CertParams& cert);

// Explicit horizon if configured, otherwise 100x the analytic bound
// (never smaller than the largest probe time + 2).
std::int64_t derive_horizon(const RunConfig& config, const BoundReport& report);

SimConfig make_sim_config(const RunConfig& config, const Pipeline& pipeline);

// The bound the simulation is compared against: the start-at-zero form when
// it applies, the general one otherwise.
double applicable_bound(const BoundReport& report);
const char* applicable_bound_name(const BoundReport& report);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  nlohmann::json evidence;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool pass = true;
  BoundReport bound;
  RenewalFloorReport cert;
  SimSummary sim;
};

// Runs every validation: tail domination over the (t0, n) grid for both
// chains, the Condition A certificate, the pathwise decomposition, the
// trial-count tail, the excess means, censoring accounting, and the
// simulated E[T] against the bound.
VerifyReport run_verify(const RunConfig& config);

}  // namespace renewal
