#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "renewal/rng.hpp"
#include "renewal/schedule.hpp"

namespace renewal {

struct RenewalTrajectory {
  int chain = 0;  // 1 or 2
  std::int64_t start_state = 0;
  std::int64_t horizon = 0;
  std::vector<std::int64_t> taus;  // visit times of state 0, ascending

  // First hitting time of {0}; empty when the chain never hit 0 in horizon.
  std::optional<std::int64_t> theta0() const {
    if (taus.empty()) return std::nullopt;
    return taus.front();
  }
};

// Walks the chain t = 0 .. horizon and records every visit of state 0.
RenewalTrajectory simulate_renewals(const ChainSchedule& schedule,
                                    std::int64_t start_state, std::int64_t horizon,
                                    RngStream& stream, int chain_label = 0);

// Smallest strictly positive time present in both renewal lists.
std::optional<std::int64_t> simultaneous_T(const RenewalTrajectory& traj1,
                                           const RenewalTrajectory& traj2);

// First renewal strictly after m, returned as the absolute time.
std::optional<std::int64_t> excess_at(const RenewalTrajectory& traj, std::int64_t m);

// The alternating trial sequence by which the two renewal processes are
// brought to coincide: nu_k points alternately into the two renewal lists,
// B_k is the remaining offset, and the trace stops at the first B_k = 0.
struct CouplingTrialTrace {
  std::vector<std::int64_t> nu;
  std::vector<std::int64_t> B;
  int tau_stop = -1;  // index of the first zero B; -1 when censored
  bool censored = true;

  // sum of B_0 .. B_tau_stop (only meaningful when resolved)
  std::int64_t sum_B() const {
    std::int64_t s = 0;
    for (std::int64_t b : B) s += b;
    return s;
  }
};

CouplingTrialTrace coupling_trials(const RenewalTrajectory& traj1,
                                   const RenewalTrajectory& traj2, std::int64_t n0);

constexpr int kMaxProbes = 8;

struct SimConfig {
  ChainSchedule chain1;
  ChainSchedule chain2;
  std::int64_t start1 = 0;
  std::int64_t start2 = 0;
  std::int64_t horizon = 1000;
  std::int64_t n_reps = 1000;
  std::uint64_t seed = 0;
  std::int64_t n0 = 0;
  std::vector<std::int64_t> probe_times{10, 50, 100};
  double censoring_budget = 1e-3;
  int tail_n_max = 10;
};

struct RepRecord {
  std::int64_t theta0_1 = -1;
  std::int64_t theta0_2 = -1;
  std::int64_t T = -1;
  std::int32_t tau_stop = -1;
  std::int64_t sum_B = -1;
  std::array<std::int64_t, kMaxProbes> excess1{};  // residual waits R_m - m, -1 unresolved
  std::array<std::int64_t, kMaxProbes> excess2{};
  bool decomp_ok = true;
  bool censored = false;
};

struct SimEstimate {
  std::int64_t n = 0;  // contributing replications
  double mean = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::int64_t censored = 0;
};

struct TailPoint {
  int n = 0;
  double p_hat = 0.0;
  double std_error = 0.0;
};

struct SimSummary {
  std::int64_t n_reps = 0;
  std::uint64_t seed = 0;
  std::int64_t horizon = 0;
  std::int64_t n0 = 0;
  SimEstimate ET;
  SimEstimate e_theta0_1;
  SimEstimate e_theta0_2;
  std::vector<TailPoint> tail_tau;  // P{tau_stop > n}, n = 1 .. tail_n_max
  std::vector<std::int64_t> probe_times;
  std::vector<SimEstimate> mean_R_1;  // per probe, residual waits
  std::vector<SimEstimate> mean_R_2;
  std::int64_t censored_reps = 0;
  std::int64_t decomp_checked = 0;
  std::int64_t decomp_violations = 0;
  double censoring_rate = 0.0;
  bool censoring_ok = true;
};

RepRecord run_replication(const SimConfig& config, std::int64_t rep);

// Replications run concurrently; replication r always consumes substream r,
// and the reduction walks records in index order, so the output does not
// depend on the worker count.
std::vector<RepRecord> run_replications(const SimConfig& config);
std::vector<RepRecord> run_replications_serial(const SimConfig& config);
SimSummary reduce_records(const SimConfig& config, const std::vector<RepRecord>& records);

SimSummary estimate(const SimConfig& config);
SimSummary estimate_serial(const SimConfig& config);

}  // namespace renewal
