#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "renewal/dominator.hpp"
#include "renewal/schedule.hpp"

namespace renewal {

// gamma = exp(mu1_hat * ln(gamma0) / gamma0), the renewal-sequence floor
// implied by gamma0 and the dominant's mean.
double gamma_from(double gamma0, double mu1_hat);

// M = mu2_hat + mu1_hat * (1/gamma + n0)
double big_M(double mu1_hat, double mu2_hat, double gamma, std::int64_t n0);

// E[T] <= E[theta0_1] + E[theta0_2] + M / gamma
double general_bound(double e_theta1, double e_theta2, double M, double gamma);

// E[T] <= mu2_hat / gamma + mu1_hat / gamma^2 (both chains started at 0)
double start_at_zero_bound(double mu1_hat, double mu2_hat, double gamma);

// Exact expected first-hitting time of state 0 from start_state at time 0,
// by forward DP. Incomplete when more than residual mass 1e-6 has not hit
// within the horizon; the value is then a lower bound.
struct ExpectedHit {
  double value = 0.0;
  double residual = 0.0;
  bool complete = true;
  int horizon = 0;
};

ExpectedHit expected_theta0(const ChainSchedule& schedule, std::int64_t start_state,
                            int horizon);

// Doubles the horizon until the residual falls below residual_tol or the cap
// is hit.
ExpectedHit expected_theta0_auto(const ChainSchedule& schedule,
                                 std::int64_t start_state,
                                 double residual_tol = 1e-12,
                                 int horizon_cap = 1 << 17);

struct BoundReport {
  double gamma0 = 0.0;
  double c = 0.0;
  double p_max = 0.0;
  double p = 0.0;
  Moments moments;
  double gamma = 0.0;  // effective value used downstream
  double gamma_computed = 0.0;
  std::optional<double> gamma_override;
  std::int64_t n0 = 0;
  double M = 0.0;
  ExpectedHit e_theta1, e_theta2;
  double bound_general = 0.0;
  // Present when n0 = 0 and both chains start in {0}.
  std::optional<double> bound_start_at_zero;
};

// Assembles every intermediate for a chosen p. Throws InfeasibleDomination
// when p violates p > 1/2 or p(1-p) >= c.
BoundReport make_bound_report(double gamma0_val, double c, double p,
                              std::int64_t n0, const ExpectedHit& e_theta1,
                              const ExpectedHit& e_theta2,
                              std::optional<double> gamma_override = std::nullopt);

enum class PickMode { MaxFeasible, GridOptimize, Fixed };

// Selects p inside the feasible interval. GridOptimize minimizes the
// start-at-zero bound over a 256-point grid on (1/2 + 1e-3, p_max].
double select_p(double c, double gamma0, PickMode mode, double fixed_p = 0.0);

// select_p plus the report for a start-in-C, n0 = 0 configuration.
std::pair<double, BoundReport> pick_p(double c, double gamma0, PickMode mode,
                                      double fixed_p = 0.0);

}  // namespace renewal
