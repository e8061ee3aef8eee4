#pragma once

#include <variant>
#include <vector>

#include "misq/generator_matrix.hpp"
#include "misq/rng.hpp"
#include "misq/step_path.hpp"

namespace misq {

struct DeterministicSpec {
  StepPath path;
};

struct CtmcSpec {
  GeneratorMatrix q;
  std::vector<double> initial;
};

// J_n(t) = J(n^{1+epsilon} t): the chain run on a superlinearly sped-up
// clock, equivalently the generator scaled by n^{1+epsilon}.
struct TimeScaledCtmcSpec {
  GeneratorMatrix q;
  std::vector<double> initial;
  double epsilon;
  int n;
};

// Brownian motion reflected into [0, 1], Euler increments folded at the
// barriers, held constant on each grid cell.
struct ReflectedBmSpec {
  double x0;
  double grid_step;
};

// J_n(s) = W(s/n); sampled as W/sqrt(n) on the grid (equal in law).
struct ScaledBmSpec {
  int n;
  double grid_step;
};

// J(t) = job count of an inner infinite-server queue whose arrival and work
// rates are modulated by an inner chain (unit-rate requirements), started
// empty.
struct MmisFeedSpec {
  GeneratorMatrix q;
  std::vector<double> initial;
  std::vector<double> lambda;
  std::vector<double> mu;
};

class BackgroundSpec {
 public:
  using Variant = std::variant<DeterministicSpec, CtmcSpec, TimeScaledCtmcSpec, ReflectedBmSpec,
                               ScaledBmSpec, MmisFeedSpec>;

  static BackgroundSpec deterministic(StepPath path);
  static BackgroundSpec ctmc(GeneratorMatrix q, std::vector<double> initial);
  static BackgroundSpec time_scaled_ctmc(GeneratorMatrix q, std::vector<double> initial,
                                         double epsilon, int n);
  static BackgroundSpec reflected_bm(double x0, double grid_step);
  static BackgroundSpec scaled_bm(int n, double grid_step);
  static BackgroundSpec mmis_feed(GeneratorMatrix q, std::vector<double> initial,
                                  std::vector<double> lambda, std::vector<double> mu);

  const Variant& variant() const { return v_; }
  StateSpace state_space() const;

  // The same background at scaling index n (replaces n where the variant is
  // scaled; unscaled variants are returned unchanged).
  BackgroundSpec with_scale_index(int n) const;

 private:
  explicit BackgroundSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// One realization on [0, horizon]. Chain and feed variants are exact in
// law; the diffusion variants are Euler approximations on their grid.
StepPath sample_path(const BackgroundSpec& spec, double horizon, RngStream& rng);

}  // namespace misq
