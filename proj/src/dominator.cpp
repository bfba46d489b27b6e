#include "renewal/dominator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace renewal {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_p_range(double p) {
  if (!(p > 0.5 && p < 1.0))
    throw std::domain_error("walk down-probability p must lie in (1/2, 1)");
}

struct SeriesResult {
  double value = 0.0;
  double tail_bound = 0.0;
  std::int64_t terms = 0;
};

// sum over m >= 1 of (2m)^q * f_{2m}, where f_{2m} follows the Catalan
// recurrence f_2 = p, f_{2(m+1)} = f_{2m} * 2(2m-1)/(m+1) * p(1-p).
// Terms eventually shrink by at least rho(m) = (4 + [q==2] 2/m) p(1-p) < 1,
// which certifies the geometric tail bound used for stopping.
SeriesResult walk_moment_series(double p, int q, double rtol,
                                std::int64_t term_cap) {
  const double pq = p * (1.0 - p);
  long double f = p;  // f_{2m} at m = 1
  long double sum = 0.0L;
  std::int64_t m = 1;
  while (true) {
    long double w = 1.0L;
    for (int j = 0; j < q; ++j) w *= 2.0L * static_cast<long double>(m);
    const long double term = w * f;
    sum += term;
    const double rho = (4.0 + (q == 2 ? 2.0 / static_cast<double>(m) : 0.0)) * pq;
    if (m >= 2 && rho < 1.0) {
      const double tail = static_cast<double>(term) * rho / (1.0 - rho);
      if (tail <= rtol * static_cast<double>(sum))
        return {static_cast<double>(sum), tail, m};
    }
    if (m >= term_cap) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "moment series did not converge within %lld terms (p = %.17g)",
                    static_cast<long long>(term_cap), p);
      throw std::runtime_error(buf);
    }
    f *= (2.0L * (2.0L * static_cast<long double>(m) - 1.0L) /
          (static_cast<long double>(m) + 1.0L)) *
         static_cast<long double>(pq);
    ++m;
  }
}

constexpr double kSeriesRtol = 1e-12;
constexpr std::int64_t kSeriesTermCap = 50'000'000;

}  // namespace

PInterval feasible_p_interval(double c) {
  require(c > 0.0, "up-down product bound c must be positive");
  if (c >= 0.25) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "no p > 1/2 satisfies p(1-p) >= c for c = %.17g (needs c < 1/4)", c);
    throw InfeasibleDomination(buf);
  }
  return PInterval{0.5, (1.0 + std::sqrt(1.0 - 4.0 * c)) / 2.0};
}

std::vector<double> first_return_walk(double p, int n_max) {
  require_p_range(p);
  require(n_max >= 2, "walk law horizon must be >= 2");
  std::vector<double> f(static_cast<std::size_t>(n_max) + 1, 0.0);
  const long double pq = static_cast<long double>(p) * (1.0L - static_cast<long double>(p));
  long double f2m = p;
  for (std::int64_t m = 1; 2 * m <= n_max; ++m) {
    f[static_cast<std::size_t>(2 * m)] = static_cast<double>(f2m);
    f2m *= (2.0L * (2.0L * static_cast<long double>(m) - 1.0L) /
            (static_cast<long double>(m) + 1.0L)) *
           pq;
  }
  return f;
}

void DominationParams::validate() const {
  if (!(p > 0.5 && p < 1.0))
    throw InfeasibleDomination("domination requires p in (1/2, 1)");
  if (!(p * (1.0 - p) >= c - 1e-12)) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "p = %.17g violates p(1-p) >= c = %.17g", p, c);
    throw InfeasibleDomination(buf);
  }
}

Moments moments(double p) {
  require_p_range(p);
  const auto s1 = walk_moment_series(p, 1, kSeriesRtol, kSeriesTermCap);
  const auto s2 = walk_moment_series(p, 2, kSeriesRtol, kSeriesTermCap);

  Moments m;
  m.diag.mu1_closed = 2.0 / (2.0 * p - 1.0) + 1.0;
  m.diag.mu1_series = 1.0 + s1.value / p;
  m.diag.mu2_series = 1.0 + s2.value / p;
  // Published closed form, transcribed as printed.
  m.diag.mu2_printed =
      (2.0 + 8.0 * (1.0 - p) / (1.0 - 4.0 * p)) / (2.0 * p - 1.0) +
      2.0 / (2.0 * p - 1.0) + 1.0;
  // From F(z) = (1 - sqrt(1 - 4p(1-p) z^2)) / (2(1-p)):
  // mu2 = F''(1) + F'(1), then mu2_hat = mu2/p + 1.
  const double d = 2.0 * p - 1.0;
  m.diag.mu2_gf = 1.0 + 4.0 / d + 8.0 * p * (1.0 - p) / (d * d * d);
  m.diag.cs_floor = 1.0 + s1.value * s1.value / p;
  m.diag.printed_matches_series =
      std::abs(m.diag.mu2_printed - m.diag.mu2_series) <= 1e-9 * m.diag.mu2_series;
  m.diag.printed_above_floor = m.diag.mu2_printed >= m.diag.cs_floor - 1e-9;
  m.diag.gf_matches_series =
      std::abs(m.diag.mu2_gf - m.diag.mu2_series) <= 1e-9 * m.diag.mu2_series;
  m.diag.series_terms = s1.terms + s2.terms;
  m.diag.series_tail_bound = s2.tail_bound;

  m.mu1_hat = m.diag.mu1_closed;
  m.mu2_hat = m.diag.mu2_series;
  return m;
}

DominatingLaw dominating_sequence(double p, int horizon) {
  require_p_range(p);
  require(horizon >= 2, "dominating-law horizon must be >= 2");

  DominatingLaw law;
  law.p = p;
  law.horizon = horizon;
  law.f = first_return_walk(p, horizon);

  const std::size_t n = law.f.size();
  law.g_hat.assign(n, 0.0);
  law.g_hat[1] = 1.0;
  for (std::size_t k = 2; k < n; ++k) law.g_hat[k] = law.f[k] / p;

  long double covered = 0.0L;
  for (double v : law.f) covered += v;
  const long double residual = std::max(0.0L, 1.0L - covered);
  law.tail_bound = static_cast<double>(residual / p);

  law.G_hat.assign(n, 0.0);
  long double acc = residual / p;
  law.G_hat[n - 1] = static_cast<double>(acc);
  for (std::size_t k = n - 1; k >= 1; --k) {
    acc += law.g_hat[k];
    law.G_hat[k - 1] = static_cast<double>(acc);
  }

  const Moments m = moments(p);
  law.mu1_hat = m.mu1_hat;
  law.mu2_hat = m.mu2_hat;
  return law;
}

DominatingLaw dominating_sequence(const DominationParams& params, int horizon) {
  params.validate();
  return dominating_sequence(params.p, horizon);
}

int auto_horizon(double p, double eps, int cap) {
  require_p_range(p);
  require(eps > 0.0, "horizon tolerance must be positive");
  const long double pq = static_cast<long double>(p) * (1.0L - static_cast<long double>(p));
  long double f2m = p;
  long double covered = 0.0L;
  for (std::int64_t m = 1; 2 * m <= cap; ++m) {
    covered += f2m;
    if (static_cast<double>((1.0L - covered) / p) < eps)
      return static_cast<int>(2 * m);
    f2m *= (2.0L * (2.0L * static_cast<long double>(m) - 1.0L) /
            (static_cast<long double>(m) + 1.0L)) *
           pq;
  }
  throw std::runtime_error("dominating-law tail did not fall below eps within the horizon cap");
}

}  // namespace renewal
