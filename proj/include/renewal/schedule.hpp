#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace renewal {

// One time-inhomogeneous birth-death chain on {0, 1, 2, ...} is described by
// its down-move probabilities alpha(t, i): from state i >= 1 the chain moves
// to i-1 with probability alpha(t, i) and to i+1 otherwise; from state 0 it
// stays with probability alpha(t, 0) and moves to 1 otherwise.

struct ConstantSpec {
  double value = 0.0;
};

// alpha depends on t only, with period table.size().
struct PeriodicTableSpec {
  std::vector<double> table;
};

// rows[t] holds alpha over states i for that t (the last entry extends to
// all larger i); the tail row applies to every t beyond the table.
struct TableWithTailSpec {
  std::vector<std::vector<double>> rows;
  std::vector<double> tail;
};

// Deterministic pseudo-random values in [lo, hi), keyed by (seed, t, i).
struct BoundedRandomSpec {
  std::uint64_t seed = 0;
  double lo = 0.0;
  double hi = 0.0;
};

using SchedulePayload =
    std::variant<ConstantSpec, PeriodicTableSpec, TableWithTailSpec, BoundedRandomSpec>;

struct ScheduleSpec {
  SchedulePayload payload;
  // Certified envelope: every alpha(t, i) lies in [alpha_lo, alpha_hi].
  // Exact extrema for tabulated kinds, declared bounds for bounded-random.
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
};

ScheduleSpec make_constant(double value);
ScheduleSpec make_periodic(std::vector<double> table);
ScheduleSpec make_table_with_tail(std::vector<std::vector<double>> rows,
                                  std::vector<double> tail);
ScheduleSpec make_bounded_random(std::uint64_t seed, double lo, double hi);

class ChainSchedule {
 public:
  // Validates 0 < alpha_lo <= alpha_hi < 1. Throws std::invalid_argument.
  ChainSchedule(ScheduleSpec spec, std::string label);

  // Skips validation; test fixtures use this for degenerate chains
  // (e.g. alpha == 1, which pins the chain to state 0).
  static ChainSchedule unchecked(ScheduleSpec spec, std::string label);

  double alpha_at(std::int64_t t, std::int64_t i) const;

  // One transition driven by a uniform variate u in [0, 1).
  std::int64_t step(std::int64_t t, std::int64_t i, double u) const;

  const ScheduleSpec& spec() const { return spec_; }
  const std::string& label() const { return label_; }
  double alpha_lo() const { return spec_.alpha_lo; }
  double alpha_hi() const { return spec_.alpha_hi; }

  // Exact infimum over t of alpha(t, 0) for tabulated kinds; the declared
  // lower bound for bounded-random.
  double inf_alpha_at_zero() const;

 private:
  ChainSchedule() = default;

  ScheduleSpec spec_;
  std::string label_;
};

// inf over t of min(alpha1(t,0), alpha2(t,0)). Throws std::domain_error when
// the infimum is not strictly positive.
double gamma0(const ChainSchedule& chain1, const ChainSchedule& chain2);

// Upper bound on sup over (t,i),(s,j) of (1 - alpha(t,i)) * alpha(s,j),
// taken across both chains: (1 - min alpha_lo) * max alpha_hi.
double sup_updown_product(const ChainSchedule& chain1, const ChainSchedule& chain2);

}  // namespace renewal
