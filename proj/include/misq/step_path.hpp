#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "misq/state_space.hpp"

namespace misq {

// Right-continuous piecewise-constant path over a state space. Breakpoint
// times are strictly increasing with t_0 = 0; the value on [t_i, t_{i+1})
// is states[i], and states.back() holds up to the horizon. Evaluation
// beyond the horizon is an error so downstream integrals never silently
// extrapolate. Immutable after construction.
class StepPath {
 public:
  StepPath(StateSpace space, std::vector<double> times, std::vector<double> states,
           double horizon);

  double value_at(double s) const;
  double horizon() const { return horizon_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& states() const { return states_; }
  const StateSpace& space() const { return space_; }
  std::size_t breakpoint_count() const { return times_.size(); }

  // Merges adjacent breakpoints with equal states; evaluation is unchanged.
  StepPath minimal_representation() const;

  // The same path with a smaller horizon; breakpoints beyond it are dropped.
  StepPath restricted(double new_horizon) const;

 private:
  StateSpace space_;
  std::vector<double> times_;
  std::vector<double> states_;
  double horizon_;
};

// 1 ∧ min_i (t_i - t_{i-1}); 1 when the path never jumps. Expects a minimal
// representation (gaps between non-jumps would otherwise count).
double truncated_min_step(const StepPath& path);

// sup over [0, T] of the state-space metric between the two paths, computed
// exactly over the union of breakpoint times. Both paths must reach T and
// live on compatible spaces.
double sup_distance(const StepPath& a, const StepPath& b, double T);

// Builds a step path holding each sampled value on [grid_i, grid_{i+1}).
StepPath discretize(const StateSpace& space, std::span<const double> grid_times,
                    std::span<const double> values, double horizon);

// CSV form: "# horizon=<value>" on line 1, then a "time,state" header and
// one breakpoint per row. Round-trips doubles exactly.
void write_csv(const StepPath& path, std::ostream& out);
std::string to_csv(const StepPath& path);
StepPath read_csv(const StateSpace& space, std::istream& in);
StepPath read_csv_file(const StateSpace& space, const std::string& filename);

}  // namespace misq
