#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "renewal/bounds.hpp"
#include "renewal/schedule.hpp"

namespace renewal {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CertParams {
  std::int64_t t_max = 100;            // Condition A grid in t
  int n_max = 200;                     // grid in n, and law horizon
  std::int64_t domination_t0_max = 50; // Condition B grid in t0
};

struct OutputPaths {
  std::optional<std::string> report;
  std::optional<std::string> laws_csv;
  std::optional<std::string> dominant_csv;
  std::optional<std::string> per_rep_csv;
};

struct RunConfig {
  ScheduleSpec spec1;
  ScheduleSpec spec2;
  std::array<std::int64_t, 2> start_states{0, 0};
  std::int64_t n0 = 0;
  PickMode p_mode = PickMode::MaxFeasible;
  double fixed_p = 0.0;
  std::int64_t horizon = 0;  // 0 = derive from the analytic bound
  std::int64_t n_reps = 100000;
  std::uint64_t seed = 0;
  CertParams cert;
  std::vector<std::int64_t> probe_times{10, 50, 100};
  double censoring_budget = 1e-3;
  std::optional<double> gamma_override;  // diagnostic injection, used as-is
  OutputPaths outputs;
};

// Throws ConfigError on any schema violation.
RunConfig parse_run_config(const nlohmann::json& doc);

// Reads and parses a config file; throws ConfigError on IO or parse failure.
RunConfig load_run_config(const std::string& path);

ChainSchedule build_chain(const ScheduleSpec& spec, const std::string& label);

}  // namespace renewal
