#pragma once

#include <cstdint>
#include <vector>

#include "renewal/dominator.hpp"
#include "renewal/schedule.hpp"

namespace renewal {

// Comparison slack for identities that are exact in real arithmetic.
inline constexpr double kExactTol = 1e-12;

// Law of the first return to state 0 for a chain sitting at 0 at time t0.
// g[n] is the probability the first re-entry happens at time t0 + n;
// G[n] = 1 - sum_{k<=n} g_k is the mass not yet returned after n steps
// (including any mass that never returns).
struct FirstReturnLaw {
  std::int64_t t0 = 0;
  int horizon = 0;
  std::vector<double> g;  // size horizon + 1, g[0] unused (= 0)
  std::vector<double> G;  // size horizon + 1, G[0] = 1
  // max over DP steps of |1 - (absorbed + alive)| -- should be ~1e-16
  double conservation_defect = 0.0;
};

// Forward DP over (step, height), absorbing at 0. O(horizon^2).
FirstReturnLaw first_return_law(const ChainSchedule& schedule, std::int64_t t0,
                                int horizon);

// Tail vector recomputed from the returned-mass entries: G[n] = 1 - sum_{k<=n} g_k.
std::vector<double> tails(const FirstReturnLaw& law);

struct RenewalSequence {
  std::int64_t t0 = 0;
  std::vector<double> u;  // u[0] = 1
};

// Immutable table of first-return laws for consecutive start times; built
// once, then shared read-only by every consumer.
class LawTable {
 public:
  static LawTable build(const ChainSchedule& schedule, std::int64_t t0_first,
                        int count, int horizon);
  // Plain loop kept as the reference for the parallel builder.
  static LawTable build_serial(const ChainSchedule& schedule, std::int64_t t0_first,
                               int count, int horizon);

  const FirstReturnLaw& at(std::int64_t t0) const;
  std::int64_t t0_first() const { return t0_first_; }
  int count() const { return static_cast<int>(laws_.size()); }
  int horizon() const { return horizon_; }

 private:
  std::int64_t t0_first_ = 0;
  int horizon_ = 0;
  std::vector<FirstReturnLaw> laws_;
};

// u[n] = sum_{k<n} u[k] g^{(t0+k)}[n-k], u[0] = 1. The table must cover
// start times t0 .. t0 + n_max - 1; throws std::out_of_range otherwise.
RenewalSequence renewal_sequence(const LawTable& table, std::int64_t t0, int n_max);

// Convenience overload that builds its own law table.
RenewalSequence renewal_sequence(const ChainSchedule& schedule, std::int64_t t0,
                                 int n_max);

// Finite-horizon certificate that u^{(t,l)}_n >= gamma over the grid
// t <= t_max, n0 <= n <= n_max, both chains. Reports the minimum and where
// it was attained; it certifies the grid, nothing beyond it.
struct RenewalFloorReport {
  double gamma = 0.0;
  std::int64_t n0 = 0;
  std::int64_t t_max = 0;
  int n_max = 0;
  double min_u = 0.0;
  std::int64_t argmin_t = 0;
  int argmin_n = 0;
  int argmin_chain = 0;  // 1 or 2
  bool pass = false;
};

RenewalFloorReport check_renewal_floor(const ChainSchedule& chain1,
                                   const ChainSchedule& chain2, double gamma,
                                   std::int64_t n0, std::int64_t t_max, int n_max);
RenewalFloorReport check_renewal_floor_serial(const ChainSchedule& chain1,
                                          const ChainSchedule& chain2, double gamma,
                                          std::int64_t n0, std::int64_t t_max,
                                          int n_max);

// Tail domination G_n <= G_hat_n for n = 0 .. law.horizon - 1.
struct DominationReport {
  double max_violation = 0.0;  // max_n (G_n - G_hat_n)
  int argmax_n = 0;
  bool pass = false;
};

DominationReport check_domination(const FirstReturnLaw& law,
                                  const DominatingLaw& dominant);

// Same check swept over start times t0 = 0 .. t0_max.
struct DominationGridReport {
  double max_violation = 0.0;
  std::int64_t argmax_t0 = 0;
  int argmax_n = 0;
  bool pass = false;
};

DominationGridReport check_domination_grid(const ChainSchedule& schedule,
                                           const DominatingLaw& dominant,
                                           std::int64_t t0_max, int n_max);
DominationGridReport check_domination_grid_serial(const ChainSchedule& schedule,
                                                  const DominatingLaw& dominant,
                                                  std::int64_t t0_max, int n_max);

}  // namespace renewal
