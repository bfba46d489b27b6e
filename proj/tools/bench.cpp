// Times the OpenMP kernels against their serial reference implementations.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "renewal/bounds.hpp"
#include "renewal/first_return.hpp"
#include "renewal/simulator.hpp"

namespace {

double run_ms(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool agree) {
  std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              agree ? "results match" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  std::printf("threads: %d\n\n", omp_get_max_threads());

  const renewal::ChainSchedule random_chain(
      renewal::make_bounded_random(7, 0.8, 0.9), "bench-random");
  const renewal::ChainSchedule constant_chain(renewal::make_constant(0.9),
                                              "bench-constant");

  {
    constexpr int kCount = 512;
    constexpr int kHorizon = 512;
    renewal::LawTable serial_table, parallel_table;
    const double serial_ms = run_ms([&] {
      serial_table = renewal::LawTable::build_serial(random_chain, 0, kCount, kHorizon);
    });
    const double parallel_ms = run_ms([&] {
      parallel_table = renewal::LawTable::build(random_chain, 0, kCount, kHorizon);
    });
    bool agree = true;
    for (int t = 0; t < kCount && agree; ++t)
      agree = serial_table.at(t).g == parallel_table.at(t).g;
    report("first-return law table", serial_ms, parallel_ms, agree);
  }

  {
    const double p = 0.764;
    const auto dominant = renewal::dominating_sequence(
        p, std::max(512, renewal::auto_horizon(p)));
    renewal::DominationGridReport serial_grid, parallel_grid;
    const double serial_ms = run_ms([&] {
      serial_grid =
          renewal::check_domination_grid_serial(random_chain, dominant, 255, 512);
    });
    const double parallel_ms = run_ms([&] {
      parallel_grid = renewal::check_domination_grid(random_chain, dominant, 255, 512);
    });
    const bool agree = serial_grid.max_violation == parallel_grid.max_violation &&
                       serial_grid.argmax_t0 == parallel_grid.argmax_t0;
    report("tail domination grid", serial_ms, parallel_ms, agree);
  }

  {
    renewal::SimConfig config{constant_chain, constant_chain};
    config.horizon = 2000;
    config.n_reps = 100000;
    config.seed = 42;
    renewal::SimSummary serial_summary, parallel_summary;
    const double serial_ms =
        run_ms([&] { serial_summary = renewal::estimate_serial(config); });
    const double parallel_ms =
        run_ms([&] { parallel_summary = renewal::estimate(config); });
    const bool agree = serial_summary.ET.mean == parallel_summary.ET.mean &&
                       serial_summary.ET.std_error == parallel_summary.ET.std_error;
    report("monte carlo replications", serial_ms, parallel_ms, agree);
  }

  {
    constexpr std::int64_t kTMax = 127;
    constexpr int kNMax = 384;
    renewal::RenewalFloorReport serial_report, parallel_report;
    const double serial_ms = run_ms([&] {
      serial_report = renewal::check_renewal_floor_serial(random_chain, constant_chain,
                                                        0.25, 0, kTMax, kNMax);
    });
    const double parallel_ms = run_ms([&] {
      parallel_report = renewal::check_renewal_floor(random_chain, constant_chain, 0.25,
                                                   0, kTMax, kNMax);
    });
    const bool agree = serial_report.min_u == parallel_report.min_u &&
                       serial_report.argmin_t == parallel_report.argmin_t;
    report("renewal floor certificate", serial_ms, parallel_ms, agree);
  }

  return 0;
}
