#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "misq/background.hpp"
#include "misq/rate_map.hpp"

namespace misq {

// Target set for the normalized count: the half line [lo, infinity) or the
// closed interval [lo, hi].
struct TargetSet {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  bool half_line() const { return std::isinf(hi); }
};

struct HybridEstimate {
  double log_p_hat = 0.0;  // log of the averaged exact Poisson probability
  double slope = 0.0;      // -(1/n) log p_hat
  double mean_phi = 0.0;   // Monte Carlo mean of the sampled Poisson means
  int replicas = 0;
  int n = 0;
};

// Rare-event probability of { M_n / n in F } by conditioning: only the law
// of the Poisson mean is Monte Carlo; the exponentially small Poisson factor
// P(Poisson(n gamma_i) in nF) is evaluated exactly in log space, and the
// replica average is a log-sum-exp (all-underflow inputs yield
// log_p_hat = -infinity rather than an error).
HybridEstimate hybrid_ldp_estimate(const BackgroundSpec& spec, const Modulation& mod, double t,
                                   int n, const TargetSet& F, int replicas, std::uint64_t seed,
                                   int threads = 0);

}  // namespace misq
