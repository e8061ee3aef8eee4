#pragma once

#include <vector>

#include "misq/rate_map.hpp"

namespace misq {

// The closed interval of attainable Poisson parameters at time t; a_plus may
// be flagged infinite (unbounded state spaces with unbounded arrival rates).
struct AttainableInterval {
  double a_minus = 0.0;
  double a_plus = 0.0;
  bool a_plus_infinite = false;
};

struct AttainableReport {
  AttainableInterval interval;  // refinement-extrapolated estimate
  AttainableInterval finest;    // raw values on the finest grid computed
  bool converged = false;
  int levels = 0;
  double last_change = 0.0;
};

// Extremes of phi_t over all step paths with values in a finite state space,
// solved as an optimal control problem in backward time: state = the tail
// work integral R, dynamics dR/du = mu(x), running reward
// lambda(x) e^{-kappa(x) R}, control x. Value iteration over an
// m x p grid on (backward time, R) with R in [0, mu_max t], linear
// interpolation in R, exact per-cell integration of the reward. Both grids
// are halved until the bounds move less than `tolerance` or
// `max_refinements` halvings elapse; the report carries the extrapolated
// interval and a convergence flag.
AttainableReport attainable_bounds_dp(const Modulation& mod, double t, int time_steps,
                                      int r_steps, double tolerance = 1e-3,
                                      int max_refinements = 4);

// Brute-force inner approximation: exhaustive phi_t over every step path
// with at most `max_jumps` jumps at `time_grid` interior candidate times
// (optionally polished by continuous coordinate descent on the jump times of
// the best paths, which keeps the result a certified inner bound).
AttainableInterval attainable_bounds_oracle(const Modulation& mod, double t, int max_jumps,
                                            int time_grid, bool polish = true);

// Probe for an unbounded upper end on the nonnegative integers: runs the
// oracle on truncations {0..K}, doubling K, and flags a_plus as infinite
// when the upper bound keeps growing instead of saturating.
AttainableInterval attainable_bounds_truncated(const Modulation& mod, double t, int initial_max_state,
                                               int doublings, int max_jumps, int time_grid);

}  // namespace misq
