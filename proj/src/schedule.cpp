#include "renewal/schedule.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#include "renewal/rng.hpp"

namespace renewal {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

std::pair<double, double> payload_extrema(const SchedulePayload& payload) {
  return std::visit(
      [](const auto& p) -> std::pair<double, double> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConstantSpec>) {
          return {p.value, p.value};
        } else if constexpr (std::is_same_v<T, PeriodicTableSpec>) {
          auto [lo, hi] = std::minmax_element(p.table.begin(), p.table.end());
          return {*lo, *hi};
        } else if constexpr (std::is_same_v<T, TableWithTailSpec>) {
          double lo = std::numeric_limits<double>::infinity();
          double hi = -lo;
          for (const auto& row : p.rows)
            for (double v : row) {
              lo = std::min(lo, v);
              hi = std::max(hi, v);
            }
          for (double v : p.tail) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
          return {lo, hi};
        } else {
          return {p.lo, p.hi};
        }
      },
      payload);
}

double row_value(const std::vector<double>& row, std::int64_t i) {
  const auto idx = static_cast<std::size_t>(i);
  return idx < row.size() ? row[idx] : row.back();
}

}  // namespace

ScheduleSpec make_constant(double value) {
  return ScheduleSpec{ConstantSpec{value}, value, value};
}

ScheduleSpec make_periodic(std::vector<double> table) {
  require(!table.empty(), "periodic schedule needs a nonempty table");
  ScheduleSpec spec{PeriodicTableSpec{std::move(table)}, 0.0, 0.0};
  auto [lo, hi] = payload_extrema(spec.payload);
  spec.alpha_lo = lo;
  spec.alpha_hi = hi;
  return spec;
}

ScheduleSpec make_table_with_tail(std::vector<std::vector<double>> rows,
                                  std::vector<double> tail) {
  require(!tail.empty(), "table schedule needs a nonempty tail row");
  for (const auto& row : rows)
    require(!row.empty(), "table schedule rows must be nonempty");
  ScheduleSpec spec{TableWithTailSpec{std::move(rows), std::move(tail)}, 0.0, 0.0};
  auto [lo, hi] = payload_extrema(spec.payload);
  spec.alpha_lo = lo;
  spec.alpha_hi = hi;
  return spec;
}

ScheduleSpec make_bounded_random(std::uint64_t seed, double lo, double hi) {
  return ScheduleSpec{BoundedRandomSpec{seed, lo, hi}, lo, hi};
}

ChainSchedule::ChainSchedule(ScheduleSpec spec, std::string label) {
  require(spec.alpha_lo > 0.0, "alpha_lo must be > 0");
  require(spec.alpha_hi < 1.0, "alpha_hi must be < 1");
  require(spec.alpha_lo <= spec.alpha_hi, "alpha_lo must be <= alpha_hi");
  auto [lo, hi] = payload_extrema(spec.payload);
  require(lo >= spec.alpha_lo && hi <= spec.alpha_hi,
          "schedule values fall outside the declared [alpha_lo, alpha_hi]");
  spec_ = std::move(spec);
  label_ = std::move(label);
}

ChainSchedule ChainSchedule::unchecked(ScheduleSpec spec, std::string label) {
  ChainSchedule s;
  s.spec_ = std::move(spec);
  s.label_ = std::move(label);
  return s;
}

double ChainSchedule::alpha_at(std::int64_t t, std::int64_t i) const {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConstantSpec>) {
          return p.value;
        } else if constexpr (std::is_same_v<T, PeriodicTableSpec>) {
          return p.table[static_cast<std::size_t>(t) % p.table.size()];
        } else if constexpr (std::is_same_v<T, TableWithTailSpec>) {
          const auto tt = static_cast<std::size_t>(t);
          const auto& row = tt < p.rows.size() ? p.rows[tt] : p.tail;
          return row_value(row, i);
        } else {
          return p.lo + (p.hi - p.lo) * hash_to_unit(p.seed, t, i);
        }
      },
      spec_.payload);
}

std::int64_t ChainSchedule::step(std::int64_t t, std::int64_t i, double u) const {
  const double a = alpha_at(t, i);
  if (i == 0) return u < a ? 0 : 1;
  return u < a ? i - 1 : i + 1;
}

double ChainSchedule::inf_alpha_at_zero() const {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConstantSpec>) {
          return p.value;
        } else if constexpr (std::is_same_v<T, PeriodicTableSpec>) {
          return *std::min_element(p.table.begin(), p.table.end());
        } else if constexpr (std::is_same_v<T, TableWithTailSpec>) {
          double lo = p.tail.front();
          for (const auto& row : p.rows) lo = std::min(lo, row.front());
          return lo;
        } else {
          return p.lo;
        }
      },
      spec_.payload);
}

double gamma0(const ChainSchedule& chain1, const ChainSchedule& chain2) {
  const double g0 = std::min(chain1.inf_alpha_at_zero(), chain2.inf_alpha_at_zero());
  if (!(g0 > 0.0))
    throw std::domain_error("stay-at-zero probabilities are not bounded away from 0");
  return g0;
}

double sup_updown_product(const ChainSchedule& chain1, const ChainSchedule& chain2) {
  const double lo = std::min(chain1.alpha_lo(), chain2.alpha_lo());
  const double hi = std::max(chain1.alpha_hi(), chain2.alpha_hi());
  return (1.0 - lo) * hi;
}

}  // namespace renewal
