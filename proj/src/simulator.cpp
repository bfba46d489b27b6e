#include "renewal/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace renewal {

namespace {

constexpr double kZ95 = 1.959963984540054;

void validate(const SimConfig& config) {
  if (config.n_reps < 1) throw std::invalid_argument("n_reps must be >= 1");
  if (config.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (config.start1 < 0 || config.start2 < 0)
    throw std::invalid_argument("start states must be >= 0");
  if (config.n0 < 0) throw std::invalid_argument("n0 must be >= 0");
  if (config.probe_times.size() > kMaxProbes)
    throw std::invalid_argument("too many excess probe times");
  for (std::int64_t m : config.probe_times)
    if (m < 0 || m >= config.horizon)
      throw std::invalid_argument("probe times must lie inside the horizon");
}

}  // namespace

RenewalTrajectory simulate_renewals(const ChainSchedule& schedule,
                                    std::int64_t start_state, std::int64_t horizon,
                                    RngStream& stream, int chain_label) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (start_state < 0) throw std::invalid_argument("start state must be >= 0");

  RenewalTrajectory traj;
  traj.chain = chain_label;
  traj.start_state = start_state;
  traj.horizon = horizon;
  traj.taus.reserve(static_cast<std::size_t>(horizon) + 1);

  std::int64_t x = start_state;
  if (x == 0) traj.taus.push_back(0);
  for (std::int64_t t = 0; t < horizon; ++t) {
    x = schedule.step(t, x, stream.uniform01());
    if (x == 0) traj.taus.push_back(t + 1);
  }
  return traj;
}

std::optional<std::int64_t> simultaneous_T(const RenewalTrajectory& traj1,
                                           const RenewalTrajectory& traj2) {
  auto it1 = traj1.taus.begin();
  auto it2 = traj2.taus.begin();
  while (it1 != traj1.taus.end() && it2 != traj2.taus.end()) {
    if (*it1 == *it2) {
      if (*it1 > 0) return *it1;
      ++it1;
      ++it2;
    } else if (*it1 < *it2) {
      ++it1;
    } else {
      ++it2;
    }
  }
  return std::nullopt;
}

std::optional<std::int64_t> excess_at(const RenewalTrajectory& traj, std::int64_t m) {
  auto it = std::upper_bound(traj.taus.begin(), traj.taus.end(), m);
  if (it == traj.taus.end()) return std::nullopt;
  return *it;
}

CouplingTrialTrace coupling_trials(const RenewalTrajectory& traj1,
                                   const RenewalTrajectory& traj2, std::int64_t n0) {
  if (n0 < 0) throw std::invalid_argument("n0 must be >= 0");

  CouplingTrialTrace trace;
  const auto& tau1 = traj1.taus;
  const auto& tau2 = traj2.taus;

  // nu_0: first renewal of chain 1 with index >= 1 beyond n0.
  std::size_t j = 1;
  while (j < tau1.size() && tau1[j] <= n0) ++j;
  if (j >= tau1.size()) return trace;  // censored
  trace.nu.push_back(static_cast<std::int64_t>(j));
  trace.B.push_back(tau1[j]);

  std::int64_t base = tau1[j];
  bool scan_chain2 = true;  // trial k = 1 scans chain 2
  for (int k = 1;; ++k) {
    const auto& taus = scan_chain2 ? tau2 : tau1;
    while (j < taus.size()) {
      const std::int64_t d = taus[j] - base;
      if (d == 0 || d > n0) break;
      ++j;
    }
    if (j >= taus.size()) return trace;  // censored
    const std::int64_t b = taus[j] - base;
    trace.nu.push_back(static_cast<std::int64_t>(j));
    trace.B.push_back(b);
    if (b == 0) {
      trace.tau_stop = k;
      trace.censored = false;
      return trace;
    }
    base = taus[j];
    scan_chain2 = !scan_chain2;
  }
}

RepRecord run_replication(const SimConfig& config, std::int64_t rep) {
  RngStream stream1(config.seed, static_cast<std::uint64_t>(rep), 1);
  RngStream stream2(config.seed, static_cast<std::uint64_t>(rep), 2);
  const RenewalTrajectory traj1 =
      simulate_renewals(config.chain1, config.start1, config.horizon, stream1, 1);
  const RenewalTrajectory traj2 =
      simulate_renewals(config.chain2, config.start2, config.horizon, stream2, 2);

  RepRecord rec;
  rec.theta0_1 = traj1.theta0().value_or(-1);
  rec.theta0_2 = traj2.theta0().value_or(-1);
  rec.T = simultaneous_T(traj1, traj2).value_or(-1);

  const CouplingTrialTrace trace = coupling_trials(traj1, traj2, config.n0);
  if (!trace.censored) {
    rec.tau_stop = static_cast<std::int32_t>(trace.tau_stop);
    rec.sum_B = trace.sum_B();
  }

  rec.excess1.fill(-1);
  rec.excess2.fill(-1);
  for (std::size_t i = 0; i < config.probe_times.size(); ++i) {
    const std::int64_t m = config.probe_times[i];
    if (auto r = excess_at(traj1, m)) rec.excess1[i] = *r - m;
    if (auto r = excess_at(traj2, m)) rec.excess2[i] = *r - m;
  }

  bool resolved = rec.theta0_1 >= 0 && rec.theta0_2 >= 0 && rec.T >= 0 &&
                  rec.tau_stop >= 0;
  for (std::size_t i = 0; i < config.probe_times.size(); ++i)
    resolved = resolved && rec.excess1[i] >= 0 && rec.excess2[i] >= 0;
  rec.censored = !resolved;

  if (rec.T >= 0 && rec.tau_stop >= 0 && rec.theta0_1 >= 0)
    rec.decomp_ok = rec.T <= rec.theta0_1 + rec.sum_B;
  return rec;
}

namespace {

// Mean / standard error over the records a selector resolves, walking
// replications in index order so the reduction is deterministic.
template <typename Select>
SimEstimate reduce_estimate(const std::vector<RepRecord>& records, Select value_of) {
  SimEstimate est;
  long double sum = 0.0L;
  for (const RepRecord& rec : records) {
    const std::int64_t v = value_of(rec);
    if (v < 0) {
      ++est.censored;
      continue;
    }
    sum += static_cast<long double>(v);
    ++est.n;
  }
  if (est.n == 0) return est;
  est.mean = static_cast<double>(sum / static_cast<long double>(est.n));

  long double ss = 0.0L;
  for (const RepRecord& rec : records) {
    const std::int64_t v = value_of(rec);
    if (v < 0) continue;
    const long double d = static_cast<long double>(v) - est.mean;
    ss += d * d;
  }
  if (est.n > 1) {
    const double var = static_cast<double>(ss / static_cast<long double>(est.n - 1));
    est.std_error = std::sqrt(var / static_cast<double>(est.n));
  }
  est.ci_lo = est.mean - kZ95 * est.std_error;
  est.ci_hi = est.mean + kZ95 * est.std_error;
  return est;
}

SimSummary reduce(const SimConfig& config, const std::vector<RepRecord>& records) {
  SimSummary summary;
  summary.n_reps = config.n_reps;
  summary.seed = config.seed;
  summary.horizon = config.horizon;
  summary.n0 = config.n0;
  summary.probe_times = config.probe_times;

  summary.ET = reduce_estimate(records, [](const RepRecord& r) { return r.T; });
  summary.e_theta0_1 =
      reduce_estimate(records, [](const RepRecord& r) { return r.theta0_1; });
  summary.e_theta0_2 =
      reduce_estimate(records, [](const RepRecord& r) { return r.theta0_2; });

  for (int n = 1; n <= config.tail_n_max; ++n) {
    std::int64_t count = 0;
    for (const RepRecord& rec : records)
      if (rec.tau_stop < 0 || rec.tau_stop > n) ++count;  // censored counts as exceeding
    TailPoint pt;
    pt.n = n;
    pt.p_hat = static_cast<double>(count) / static_cast<double>(records.size());
    pt.std_error = std::sqrt(pt.p_hat * (1.0 - pt.p_hat) /
                             static_cast<double>(records.size()));
    summary.tail_tau.push_back(pt);
  }

  for (std::size_t i = 0; i < config.probe_times.size(); ++i) {
    summary.mean_R_1.push_back(
        reduce_estimate(records, [i](const RepRecord& r) { return r.excess1[i]; }));
    summary.mean_R_2.push_back(
        reduce_estimate(records, [i](const RepRecord& r) { return r.excess2[i]; }));
  }

  for (const RepRecord& rec : records) {
    if (rec.censored) ++summary.censored_reps;
    if (rec.T >= 0 && rec.tau_stop >= 0 && rec.theta0_1 >= 0) {
      ++summary.decomp_checked;
      if (!rec.decomp_ok) ++summary.decomp_violations;
    }
  }
  summary.censoring_rate = static_cast<double>(summary.censored_reps) /
                           static_cast<double>(records.size());
  summary.censoring_ok = summary.censoring_rate <= config.censoring_budget;
  return summary;
}

}  // namespace

std::vector<RepRecord> run_replications(const SimConfig& config) {
  validate(config);
  std::vector<RepRecord> records(static_cast<std::size_t>(config.n_reps));
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t r = 0; r < config.n_reps; ++r)
    records[static_cast<std::size_t>(r)] = run_replication(config, r);
  return records;
}

std::vector<RepRecord> run_replications_serial(const SimConfig& config) {
  validate(config);
  std::vector<RepRecord> records(static_cast<std::size_t>(config.n_reps));
  for (std::int64_t r = 0; r < config.n_reps; ++r)
    records[static_cast<std::size_t>(r)] = run_replication(config, r);
  return records;
}

SimSummary reduce_records(const SimConfig& config, const std::vector<RepRecord>& records) {
  return reduce(config, records);
}

SimSummary estimate(const SimConfig& config) {
  return reduce(config, run_replications(config));
}

SimSummary estimate_serial(const SimConfig& config) {
  return reduce(config, run_replications_serial(config));
}

}  // namespace renewal
