#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "misq/background.hpp"
#include "misq/rate_map.hpp"

namespace misq {

struct SimResult {
  long long count = 0;
  // The sampled Poisson mean; only the conditional simulator fills it in.
  double phi_value = std::numeric_limits<double>::quiet_NaN();
  std::optional<StepPath> path;
};

// Discrete-event route: samples a background path, generates arrivals as a
// unit Poisson process run through the arrival-rate clock (exact segmentwise
// inversion, never thinning), draws each job's requirement against the
// arrival-state rate (infinite when that rate is 0), and counts the jobs
// whose work integral up to t falls short of the requirement.
SimResult simulate_direct(const BackgroundSpec& spec, const Modulation& mod, double t,
                          RngStream& rng, bool keep_path = false);

// Mixture route: samples a path, evaluates its Poisson mean, and draws the
// count from that Poisson law directly.
SimResult simulate_conditional(const BackgroundSpec& spec, const Modulation& mod, double t,
                               RngStream& rng, bool keep_path = false);

long long poisson_sample(double mean, RngStream& rng);

std::map<long long, double> empirical_pmf(std::span<const long long> counts);

// Total variation distance, ½ Σ |p_k - q_k| over the union support.
double tv_distance(const std::map<long long, double>& p, const std::map<long long, double>& q);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Two-sample chi-square on count data; adjacent bins are pooled until each
// pooled bin holds at least `min_pooled` observations from the combined
// samples.
ChiSquareResult chi_square_two_sample(std::span<const long long> a, std::span<const long long> b,
                                      double min_pooled = 10.0);

}  // namespace misq
