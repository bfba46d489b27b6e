#include "renewal/first_return.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace renewal {

FirstReturnLaw first_return_law(const ChainSchedule& schedule, std::int64_t t0,
                                int horizon) {
  if (horizon < 1) throw std::invalid_argument("first-return horizon must be >= 1");
  if (t0 < 0) throw std::invalid_argument("start time must be >= 0");

  FirstReturnLaw law;
  law.t0 = t0;
  law.horizon = horizon;
  law.g.assign(static_cast<std::size_t>(horizon) + 1, 0.0);
  law.G.assign(static_cast<std::size_t>(horizon) + 1, 0.0);

  const std::size_t width = static_cast<std::size_t>(horizon) + 3;
  std::vector<long double> alive(width, 0.0L), next(width, 0.0L);

  const double a0 = schedule.alpha_at(t0, 0);
  law.g[1] = a0;
  alive[1] = 1.0L - static_cast<long double>(a0);

  long double absorbed = a0;
  long double defect = std::fabs(1.0L - (absorbed + alive[1]));

  // After k steps the alive heights share k's parity and stay <= k.
  for (int k = 1; k < horizon; ++k) {
    const std::int64_t t = t0 + k;
    std::fill(next.begin(), next.begin() + k + 3, 0.0L);

    long double g_next = 0.0L;
    for (int h = (k % 2 == 0) ? 2 : 1; h <= k; h += 2) {
      const long double w = alive[static_cast<std::size_t>(h)];
      if (w == 0.0L) continue;
      const long double a = schedule.alpha_at(t, h);
      if (h == 1)
        g_next += w * a;
      else
        next[static_cast<std::size_t>(h - 1)] += w * a;
      next[static_cast<std::size_t>(h + 1)] += w * (1.0L - a);
    }
    law.g[static_cast<std::size_t>(k + 1)] = static_cast<double>(g_next);
    absorbed += g_next;
    std::swap(alive, next);

    long double mass = absorbed;
    for (int h = ((k + 1) % 2 == 0) ? 2 : 1; h <= k + 1; h += 2)
      mass += alive[static_cast<std::size_t>(h)];
    defect = std::max(defect, std::fabs(1.0L - mass));
  }

  long double tail = 1.0L;
  law.G[0] = 1.0;
  for (int n = 1; n <= horizon; ++n) {
    tail -= law.g[static_cast<std::size_t>(n)];
    law.G[static_cast<std::size_t>(n)] = static_cast<double>(tail);
  }
  law.conservation_defect = static_cast<double>(defect);
  return law;
}

std::vector<double> tails(const FirstReturnLaw& law) {
  std::vector<double> G(law.g.size(), 0.0);
  long double tail = 1.0L;
  G[0] = 1.0;
  for (std::size_t n = 1; n < law.g.size(); ++n) {
    tail -= law.g[n];
    G[n] = static_cast<double>(tail);
  }
  return G;
}

LawTable LawTable::build_serial(const ChainSchedule& schedule, std::int64_t t0_first,
                                int count, int horizon) {
  LawTable table;
  table.t0_first_ = t0_first;
  table.horizon_ = horizon;
  table.laws_.resize(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    table.laws_[static_cast<std::size_t>(k)] =
        first_return_law(schedule, t0_first + k, horizon);
  return table;
}

LawTable LawTable::build(const ChainSchedule& schedule, std::int64_t t0_first,
                         int count, int horizon) {
  LawTable table;
  table.t0_first_ = t0_first;
  table.horizon_ = horizon;
  table.laws_.resize(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < count; ++k)
    table.laws_[static_cast<std::size_t>(k)] =
        first_return_law(schedule, t0_first + k, horizon);
  return table;
}

const FirstReturnLaw& LawTable::at(std::int64_t t0) const {
  const std::int64_t k = t0 - t0_first_;
  if (k < 0 || k >= static_cast<std::int64_t>(laws_.size()))
    throw std::out_of_range("law table does not cover the requested start time");
  return laws_[static_cast<std::size_t>(k)];
}

RenewalSequence renewal_sequence(const LawTable& table, std::int64_t t0, int n_max) {
  if (n_max < 0) throw std::invalid_argument("renewal-sequence horizon must be >= 0");
  if (table.horizon() < n_max)
    throw std::out_of_range("law table horizon is shorter than the requested sequence");

  RenewalSequence seq;
  seq.t0 = t0;
  seq.u.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  seq.u[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    long double acc = 0.0L;
    for (int k = 0; k < n; ++k) {
      const double g = table.at(t0 + k).g[static_cast<std::size_t>(n - k)];
      if (g != 0.0) acc += static_cast<long double>(seq.u[static_cast<std::size_t>(k)]) * g;
    }
    seq.u[static_cast<std::size_t>(n)] = static_cast<double>(acc);
  }
  return seq;
}

RenewalSequence renewal_sequence(const ChainSchedule& schedule, std::int64_t t0,
                                 int n_max) {
  const LawTable table =
      LawTable::build(schedule, t0, std::max(1, n_max), std::max(1, n_max));
  return renewal_sequence(table, t0, n_max);
}

namespace {

struct GridMin {
  double min_u = 2.0;
  std::int64_t argmin_t = 0;
  int argmin_n = 0;
};

// Per-start-time minimum of u over n in [n0, n_max].
GridMin sequence_min(const LawTable& table, std::int64_t t, std::int64_t n0, int n_max) {
  const RenewalSequence seq = renewal_sequence(table, t, n_max);
  GridMin out;
  out.argmin_t = t;
  for (int n = static_cast<int>(std::max<std::int64_t>(n0, 0)); n <= n_max; ++n) {
    const double u = seq.u[static_cast<std::size_t>(n)];
    if (u < out.min_u) {
      out.min_u = u;
      out.argmin_n = n;
    }
  }
  return out;
}

RenewalFloorReport condition_a_impl(const ChainSchedule& chain1,
                                  const ChainSchedule& chain2, double gamma,
                                  std::int64_t n0, std::int64_t t_max, int n_max,
                                  bool parallel) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("gamma must lie in (0, 1]");
  if (n0 > n_max)
    throw std::invalid_argument("n0 exceeds the certificate horizon");

  RenewalFloorReport report;
  report.gamma = gamma;
  report.n0 = n0;
  report.t_max = t_max;
  report.n_max = n_max;
  report.min_u = 2.0;

  const int t_count = static_cast<int>(t_max) + 1;
  const int law_count = t_count + n_max;
  const ChainSchedule* chains[2] = {&chain1, &chain2};
  for (int l = 0; l < 2; ++l) {
    const LawTable table = parallel
                               ? LawTable::build(*chains[l], 0, law_count, n_max)
                               : LawTable::build_serial(*chains[l], 0, law_count, n_max);
    std::vector<GridMin> mins(static_cast<std::size_t>(t_count));
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
      for (int t = 0; t < t_count; ++t)
        mins[static_cast<std::size_t>(t)] = sequence_min(table, t, n0, n_max);
    } else {
      for (int t = 0; t < t_count; ++t)
        mins[static_cast<std::size_t>(t)] = sequence_min(table, t, n0, n_max);
    }
    for (const GridMin& m : mins) {
      if (m.min_u < report.min_u) {
        report.min_u = m.min_u;
        report.argmin_t = m.argmin_t;
        report.argmin_n = m.argmin_n;
        report.argmin_chain = l + 1;
      }
    }
  }
  report.pass = report.min_u >= gamma;
  return report;
}

DominationReport domination_impl(const FirstReturnLaw& law,
                                 const DominatingLaw& dominant) {
  if (dominant.horizon < law.horizon)
    throw std::invalid_argument("dominating law is shorter than the chain law");
  DominationReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (int n = 0; n < law.horizon; ++n) {
    const double v = law.G[static_cast<std::size_t>(n)] -
                     dominant.G_hat[static_cast<std::size_t>(n)];
    if (v > report.max_violation) {
      report.max_violation = v;
      report.argmax_n = n;
    }
  }
  report.pass = report.max_violation <= kExactTol;
  return report;
}

DominationGridReport domination_grid_impl(const ChainSchedule& schedule,
                                          const DominatingLaw& dominant,
                                          std::int64_t t0_max, int n_max,
                                          bool parallel) {
  const int count = static_cast<int>(t0_max) + 1;
  std::vector<DominationReport> rows(static_cast<std::size_t>(count));
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < count; ++k)
      rows[static_cast<std::size_t>(k)] =
          domination_impl(first_return_law(schedule, k, n_max), dominant);
  } else {
    for (int k = 0; k < count; ++k)
      rows[static_cast<std::size_t>(k)] =
          domination_impl(first_return_law(schedule, k, n_max), dominant);
  }

  DominationGridReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < count; ++k) {
    const DominationReport& r = rows[static_cast<std::size_t>(k)];
    if (r.max_violation > report.max_violation) {
      report.max_violation = r.max_violation;
      report.argmax_t0 = k;
      report.argmax_n = r.argmax_n;
    }
  }
  report.pass = report.max_violation <= kExactTol;
  return report;
}

}  // namespace

RenewalFloorReport check_renewal_floor(const ChainSchedule& chain1,
                                   const ChainSchedule& chain2, double gamma,
                                   std::int64_t n0, std::int64_t t_max, int n_max) {
  return condition_a_impl(chain1, chain2, gamma, n0, t_max, n_max, true);
}

RenewalFloorReport check_renewal_floor_serial(const ChainSchedule& chain1,
                                          const ChainSchedule& chain2, double gamma,
                                          std::int64_t n0, std::int64_t t_max,
                                          int n_max) {
  return condition_a_impl(chain1, chain2, gamma, n0, t_max, n_max, false);
}

DominationReport check_domination(const FirstReturnLaw& law,
                                  const DominatingLaw& dominant) {
  return domination_impl(law, dominant);
}

DominationGridReport check_domination_grid(const ChainSchedule& schedule,
                                           const DominatingLaw& dominant,
                                           std::int64_t t0_max, int n_max) {
  return domination_grid_impl(schedule, dominant, t0_max, n_max, true);
}

DominationGridReport check_domination_grid_serial(const ChainSchedule& schedule,
                                                  const DominatingLaw& dominant,
                                                  std::int64_t t0_max, int n_max) {
  return domination_grid_impl(schedule, dominant, t0_max, n_max, false);
}

}  // namespace renewal
