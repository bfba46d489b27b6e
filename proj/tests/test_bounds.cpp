#include "renewal/bounds.hpp"

#include <cmath>

#include "doctest.h"
#include "renewal/rng.hpp"

using namespace renewal;

TEST_CASE("gamma floor from gamma0 and the dominant mean") {
  CHECK(gamma_from(1.0, 3.5) == 1.0);
  CHECK(gamma_from(0.9, 3.5) ==
        doctest::Approx(0.6638259159395708).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_from(0.0, 3.5), std::domain_error);
  CHECK_THROWS_AS(gamma_from(0.9, 0.5), std::invalid_argument);

  // increasing gamma0 can only raise the floor
  for (const double mu : {1.5, 3.5, 10.0}) {
    double prev = 0.0;
    for (double g0 = 0.05; g0 <= 1.0; g0 += 0.05) {
      const double g = gamma_from(g0, mu);
      CHECK(g >= prev);
      prev = g;
    }
  }
}

TEST_CASE("M assembles the dominant moments and the floor") {
  CHECK(big_M(4.0, 10.0, 0.5, 0) == doctest::Approx(18.0).epsilon(1e-15));
  CHECK(big_M(4.0, 10.0, 1.0, 0) == doctest::Approx(14.0).epsilon(1e-15));
  CHECK(big_M(4.0, 10.0, 0.5, 3) == doctest::Approx(30.0).epsilon(1e-15));
}

TEST_CASE("bound arithmetic") {
  CHECK(general_bound(0.0, 0.0, 18.0, 0.5) == doctest::Approx(36.0));
  CHECK(general_bound(1.5, 2.0, 18.0, 0.5) == doctest::Approx(39.5));
  CHECK(start_at_zero_bound(4.0, 10.0, 1.0) == doctest::Approx(14.0));
}

TEST_CASE("start-at-zero bound equals the general bound at n0 = 0") {
  RngStream rng(99, 0, 0);
  for (int k = 0; k < 1000; ++k) {
    const double mu1 = 1.0 + 19.0 * rng.uniform01();
    const double mu2 = 1.0 + 399.0 * rng.uniform01();
    const double gamma = 0.01 + 0.99 * rng.uniform01();
    const double via_general = general_bound(0.0, 0.0, big_M(mu1, mu2, gamma, 0), gamma);
    const double direct = start_at_zero_bound(mu1, mu2, gamma);
    CHECK(std::fabs(via_general - direct) <= 1e-12 * direct);
  }
}

TEST_CASE("p selection") {
  auto [p, report] = pick_p(0.09, 0.9, PickMode::MaxFeasible);
  CHECK(p == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(report.p == p);
  CHECK(report.bound_start_at_zero.has_value());

  auto [p_grid, report_grid] = pick_p(0.18, 0.8, PickMode::GridOptimize);
  auto [p_max, report_max] = pick_p(0.18, 0.8, PickMode::MaxFeasible);
  CHECK(*report_grid.bound_start_at_zero <= *report_max.bound_start_at_zero + 1e-12);
  CHECK(p_grid > 0.5);
  CHECK(p_grid <= p_max + 1e-12);

  CHECK_THROWS_AS(pick_p(0.26, 0.9, PickMode::MaxFeasible), InfeasibleDomination);
  CHECK_THROWS_AS(select_p(0.18, 0.8, PickMode::Fixed, 0.99), InfeasibleDomination);
  CHECK(select_p(0.18, 0.8, PickMode::Fixed, 0.7) == 0.7);
}

TEST_CASE("bound report invariants") {
  const ExpectedHit at_zero;
  const BoundReport report = make_bound_report(0.9, 0.09, 0.9, 0, at_zero, at_zero);
  CHECK(report.gamma > 0.0);
  CHECK(report.gamma <= 1.0);
  CHECK(report.M >= report.moments.mu2_hat);
  CHECK(report.bound_general >= report.M / report.gamma - 1e-12);
  CHECK(report.bound_general >= report.moments.mu2_hat);
  REQUIRE(report.bound_start_at_zero.has_value());
  CHECK(std::fabs(*report.bound_start_at_zero - report.bound_general) <= 1e-12 * report.bound_general);
  CHECK(*report.bound_start_at_zero == doctest::Approx(19.09946017584828).epsilon(1e-10));

  // nonzero n0 or start states suppress the start-at-zero form
  const BoundReport with_n0 = make_bound_report(0.9, 0.09, 0.9, 2, at_zero, at_zero);
  CHECK_FALSE(with_n0.bound_start_at_zero.has_value());
  CHECK(with_n0.M > report.M);

  const BoundReport overridden =
      make_bound_report(0.9, 0.09, 0.9, 0, at_zero, at_zero, 0.999);
  CHECK(overridden.gamma == 0.999);
  CHECK(overridden.gamma_computed == report.gamma);
}

TEST_CASE("bound is nonincreasing in gamma0") {
  const ExpectedHit at_zero;
  double prev = std::numeric_limits<double>::infinity();
  for (double g0 = 0.55; g0 <= 0.95; g0 += 0.05) {
    const BoundReport report = make_bound_report(g0, 0.09, 0.9, 0, at_zero, at_zero);
    CHECK(*report.bound_start_at_zero <= prev + 1e-9);
    prev = *report.bound_start_at_zero;
  }
}

TEST_CASE("expected hitting time of zero") {
  const ChainSchedule const9(make_constant(0.9), "c");
  CHECK(expected_theta0(const9, 0, 100).value == 0.0);
  CHECK(expected_theta0(const9, 0, 100).complete);

  const ExpectedHit from1 = expected_theta0_auto(const9, 1);
  CHECK(from1.complete);
  CHECK(from1.value == doctest::Approx(1.25).epsilon(1e-9));
  const ExpectedHit from2 = expected_theta0_auto(const9, 2);
  CHECK(from2.value == doctest::Approx(2.5).epsilon(1e-9));

  // mild drift and a short horizon leave mass unabsorbed
  const ChainSchedule slow(make_constant(0.55), "s");
  const ExpectedHit truncated = expected_theta0(slow, 5, 10);
  CHECK_FALSE(truncated.complete);
  CHECK(truncated.residual > 1e-6);
  const ExpectedHit converged = expected_theta0_auto(slow, 5);
  CHECK(converged.complete);
  CHECK(converged.value == doctest::Approx(50.0).epsilon(1e-6));  // 5 / (2a - 1)
}
