#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace renewal {

// No p with p > 1/2 and p(1-p) >= c exists (or a chosen p violates that).
class InfeasibleDomination : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Half-open-below interval (lo, hi] of admissible p values.
struct PInterval {
  double lo = 0.5;
  double hi = 0.0;
};

// Solves p(1-p) >= c on (1/2, 1). Throws InfeasibleDomination when c >= 1/4,
// std::invalid_argument when c <= 0.
PInterval feasible_p_interval(double c);

// First-return law of the homogeneous walk with down-probability p from
// states >= 1 and a forced up-move from 0. f[n] for n = 0..n_max; odd
// entries are zero, f[2m] = Catalan(m-1) p^m (1-p)^(m-1).
std::vector<double> first_return_walk(double p, int n_max);

struct DominationParams {
  double p = 0.0;
  double c = 0.0;

  // Throws InfeasibleDomination unless p > 1/2 and p(1-p) >= c.
  void validate() const;
};

// Everything the three mu2 routes produced, so reports can show where the
// closed forms and the series disagree.
struct MomentDiagnostics {
  double mu1_closed = 0.0;
  double mu1_series = 0.0;
  double mu2_series = 0.0;   // authoritative
  double mu2_printed = 0.0;  // transcribed published closed form
  double mu2_gf = 0.0;       // generating-function derivation
  double cs_floor = 0.0;     // 1 + mu1f^2 / p, with mu1f the walk's mean return time
  bool printed_matches_series = false;
  bool printed_above_floor = false;
  bool gf_matches_series = false;
  std::int64_t series_terms = 0;
  double series_tail_bound = 0.0;
};

struct Moments {
  double mu1_hat = 0.0;
  double mu2_hat = 0.0;
  MomentDiagnostics diag;
};

// First and second moments of the dominating sequence. mu1_hat comes from
// the closed form 2/(2p-1) + 1, mu2_hat from the truncated series
// sum n^2 g_hat_n with a certified geometric tail bound (relative error
// <= 1e-12). Throws std::runtime_error if the series does not converge
// within the term cap.
Moments moments(double p);

struct DominatingLaw {
  double p = 0.0;
  int horizon = 0;
  std::vector<double> f;      // walk first-return law, f[0..N]
  std::vector<double> g_hat;  // g_hat[1] = 1, g_hat[n] = f[n]/p for n > 1
  std::vector<double> G_hat;  // G_hat[n] = sum_{k>n} g_hat_k, infinite tail folded in
  double mu1_hat = 0.0;
  double mu2_hat = 0.0;
  double tail_bound = 0.0;  // mass of g_hat beyond the horizon
};

// Validates only p in (1/2, 1); feasibility against c is the caller's check.
DominatingLaw dominating_sequence(double p, int horizon);
DominatingLaw dominating_sequence(const DominationParams& params, int horizon);

// Smallest even horizon N with G_hat_N < eps. Throws std::runtime_error if
// the cap is exceeded (p too close to 1/2).
int auto_horizon(double p, double eps = 1e-10, int cap = 1 << 20);

}  // namespace renewal
