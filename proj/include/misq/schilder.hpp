#pragma once

#include <vector>

#include "misq/rate_map.hpp"
#include "misq/step_path.hpp"

namespace misq {

struct SchilderOptions {
  int sub_steps = 1024;          // fixed fine grid for evaluating phi, shared across segment counts
  double penalty_init = 4.0;
  double penalty_mult = 8.0;
  int penalty_stages = 9;
  double constraint_tol = 1e-8;
  int max_iters_per_stage = 400;
  double fd_step = 1e-6;
};

struct SchilderResult {
  double value = 0.0;            // energy of the returned path, an upper bound on psi(a)
  std::vector<double> node_times;
  std::vector<double> node_values;
  double constraint_violation = 0.0;
  bool converged = false;
};

// Action minimizer for a Brownian background: minimizes the path energy
// ½ Σ ((f_{i+1}-f_i)/h)² h over piecewise-linear f with f(0) = 0 subject to
// phi_t(f) = a, enforced by an augmented penalty schedule with multiplier
// updates. phi is evaluated on a fixed fine discretization of f and its
// gradient in the node values by central finite differences. Multi-start
// (zero path, feasible ramps, optional warm start); the returned energy is
// an upper bound whose decrease under segment refinement is the convergence
// evidence.
SchilderResult schilder_psi(const Modulation& mod, double t, double target_a, int segments,
                            const SchilderOptions& opts = {},
                            const std::vector<double>& warm_start = {});

// Runs schilder_psi over a refinement schedule of segment counts, warm
// starting each level from the previous optimizer.
std::vector<SchilderResult> schilder_psi_refined(const Modulation& mod, double t, double target_a,
                                                 const std::vector<int>& segment_schedule,
                                                 const SchilderOptions& opts = {});

// The step-path discretization of the optimizer used by the phi evaluator.
StepPath schilder_path(const Modulation& mod, double t, const SchilderResult& result,
                       int sub_steps = 1024);

// Energy ½ ∫ |f'|² of the piecewise-linear interpolant of the node values.
double path_energy(const std::vector<double>& node_times, const std::vector<double>& node_values);

// phi of the piecewise-linear interpolant, via the shared fine grid.
double phi_piecewise_linear(const Modulation& mod, double t, const std::vector<double>& node_times,
                            const std::vector<double>& node_values, int sub_steps = 1024);

}  // namespace misq
