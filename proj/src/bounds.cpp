#include "renewal/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace renewal {

double gamma_from(double gamma0, double mu1_hat) {
  if (!(gamma0 > 0.0 && gamma0 <= 1.0))
    throw std::domain_error("gamma0 must lie in (0, 1]");
  if (!(mu1_hat >= 1.0))
    throw std::invalid_argument("mu1_hat must be >= 1");
  return std::exp(mu1_hat * std::log(gamma0) / gamma0);
}

double big_M(double mu1_hat, double mu2_hat, double gamma, std::int64_t n0) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::domain_error("gamma must lie in (0, 1]");
  return mu2_hat + mu1_hat * (1.0 / gamma + static_cast<double>(n0));
}

double general_bound(double e_theta1, double e_theta2, double M, double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("gamma must be positive");
  return e_theta1 + e_theta2 + M / gamma;
}

double start_at_zero_bound(double mu1_hat, double mu2_hat, double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("gamma must be positive");
  return mu2_hat / gamma + mu1_hat / (gamma * gamma);
}

ExpectedHit expected_theta0(const ChainSchedule& schedule, std::int64_t start_state,
                            int horizon) {
  if (start_state < 0) throw std::invalid_argument("start state must be >= 0");
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");

  ExpectedHit out;
  out.horizon = horizon;
  if (start_state == 0) return out;

  // Masses below the trim threshold cannot move the result at any
  // representable precision; skipping them keeps the alive window narrow.
  constexpr long double kTrim = 1e-290L;

  const std::size_t width = static_cast<std::size_t>(start_state) + static_cast<std::size_t>(horizon) + 3;
  std::vector<long double> alive(width, 0.0L), next(width, 0.0L);
  alive[static_cast<std::size_t>(start_state)] = 1.0L;
  std::int64_t h_lo = start_state, h_hi = start_state;

  long double expected = 0.0L;
  long double absorbed = 0.0L;
  for (int t = 0; t < horizon; ++t) {
    const std::size_t lo = static_cast<std::size_t>(std::max<std::int64_t>(1, h_lo - 1));
    const std::size_t hi = static_cast<std::size_t>(h_hi) + 1;
    std::fill(next.begin() + lo, next.begin() + hi + 1, 0.0L);

    long double hit = 0.0L;
    for (std::int64_t h = h_lo; h <= h_hi; ++h) {
      const long double w = alive[static_cast<std::size_t>(h)];
      if (w < kTrim) continue;
      const long double a = schedule.alpha_at(t, h);
      if (h == 1)
        hit += w * a;
      else
        next[static_cast<std::size_t>(h - 1)] += w * a;
      next[static_cast<std::size_t>(h + 1)] += w * (1.0L - a);
    }
    expected += static_cast<long double>(t + 1) * hit;
    absorbed += hit;
    std::swap(alive, next);

    h_lo = std::max<std::int64_t>(1, h_lo - 1);
    h_hi = h_hi + 1;
    while (h_hi > h_lo && alive[static_cast<std::size_t>(h_hi)] < kTrim) --h_hi;
    while (h_lo < h_hi && alive[static_cast<std::size_t>(h_lo)] < kTrim) ++h_lo;
  }

  out.value = static_cast<double>(expected);
  out.residual = static_cast<double>(1.0L - absorbed);
  out.complete = out.residual <= 1e-6;
  return out;
}

ExpectedHit expected_theta0_auto(const ChainSchedule& schedule,
                                 std::int64_t start_state, double residual_tol,
                                 int horizon_cap) {
  int horizon = 1024;
  while (true) {
    ExpectedHit hit = expected_theta0(schedule, start_state,
                                      std::min(horizon, horizon_cap));
    if (hit.residual <= residual_tol || horizon >= horizon_cap) return hit;
    horizon *= 2;
  }
}

BoundReport make_bound_report(double gamma0_val, double c, double p,
                              std::int64_t n0, const ExpectedHit& e_theta1,
                              const ExpectedHit& e_theta2,
                              std::optional<double> gamma_override) {
  DominationParams{p, c}.validate();

  BoundReport report;
  report.gamma0 = gamma0_val;
  report.c = c;
  report.p_max = feasible_p_interval(c).hi;
  report.p = p;
  report.moments = moments(p);
  report.gamma_computed = gamma_from(gamma0_val, report.moments.mu1_hat);
  report.gamma_override = gamma_override;
  report.gamma = gamma_override.value_or(report.gamma_computed);
  report.n0 = n0;
  report.M = big_M(report.moments.mu1_hat, report.moments.mu2_hat, report.gamma, n0);
  report.e_theta1 = e_theta1;
  report.e_theta2 = e_theta2;
  report.bound_general =
      general_bound(e_theta1.value, e_theta2.value, report.M, report.gamma);
  if (n0 == 0 && e_theta1.value == 0.0 && e_theta2.value == 0.0)
    report.bound_start_at_zero =
        start_at_zero_bound(report.moments.mu1_hat, report.moments.mu2_hat, report.gamma);
  return report;
}

double select_p(double c, double gamma0, PickMode mode, double fixed_p) {
  const PInterval interval = feasible_p_interval(c);
  switch (mode) {
    case PickMode::MaxFeasible:
      return interval.hi;
    case PickMode::Fixed:
      DominationParams{fixed_p, c}.validate();
      return fixed_p;
    case PickMode::GridOptimize:
      break;
  }

  constexpr int kGridSize = 256;
  constexpr double kDelta = 1e-3;
  const double lo = 0.5 + kDelta;
  std::vector<double> grid;
  if (interval.hi <= lo) {
    grid.push_back(interval.hi);
  } else {
    grid.reserve(kGridSize);
    for (int k = 0; k < kGridSize; ++k)
      grid.push_back(lo +
                     (interval.hi - lo) * (static_cast<double>(k) / (kGridSize - 1)));
  }
  std::vector<double> values(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Moments m = moments(grid[k]);
    const double gamma = gamma_from(gamma0, m.mu1_hat);
    values[k] = start_at_zero_bound(m.mu1_hat, m.mu2_hat, gamma);
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k)
    if (values[k] < values[best]) best = k;
  return grid[best];
}

std::pair<double, BoundReport> pick_p(double c, double gamma0, PickMode mode,
                                      double fixed_p) {
  const double p = select_p(c, gamma0, mode, fixed_p);
  const ExpectedHit at_zero;  // both chains started in C
  return {p, make_bound_report(gamma0, c, p, 0, at_zero, at_zero)};
}

}  // namespace renewal
