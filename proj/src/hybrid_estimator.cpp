#include "misq/hybrid_estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "misq/numerics.hpp"
#include "misq/parallel.hpp"
#include "misq/phi.hpp"
#include "misq/poisson_ldp.hpp"

namespace misq {

namespace {

// Integer counts k with k/n in F, robust to representation error at the
// endpoints (k = n*lo exactly must stay inside).
IntegerSet scaled_integer_set(const TargetSet& F, int n) {
  IntegerSet s;
  const double nlo = static_cast<double>(n) * F.lo;
  s.lo = static_cast<long long>(std::ceil(nlo - 1e-9 * std::max(1.0, std::abs(nlo))));
  if (!F.half_line()) {
    const double nhi = static_cast<double>(n) * F.hi;
    s.hi = static_cast<long long>(std::floor(nhi + 1e-9 * std::max(1.0, std::abs(nhi))));
  }
  return s;
}

}  // namespace

HybridEstimate hybrid_ldp_estimate(const BackgroundSpec& spec, const Modulation& mod, double t,
                                   int n, const TargetSet& F, int replicas, std::uint64_t seed,
                                   int threads) {
  if (n < 1) throw std::invalid_argument("hybrid_ldp_estimate: n must be >= 1");
  if (replicas < 1) throw std::invalid_argument("hybrid_ldp_estimate: replicas must be >= 1");
  if (!(F.lo >= 0.0) || F.hi < F.lo)
    throw std::invalid_argument("hybrid_ldp_estimate: target set must satisfy 0 <= lo <= hi");

  const BackgroundSpec scaled = spec.with_scale_index(n);
  const IntegerSet set = scaled_integer_set(F, n);
  static constexpr std::uint64_t kTag = stream_tag("hybrid_ldp");

  std::vector<double> log_terms(static_cast<std::size_t>(replicas));
  std::vector<double> phis(static_cast<std::size_t>(replicas));
  if (threads <= 0) threads = default_thread_count();
  parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t i) {
    RngStream rng(seed, kTag, i);
    const StepPath path = sample_path(scaled, t, rng);
    const double gamma = phi(path, mod, t);
    phis[i] = gamma;
    log_terms[i] = poisson_tail_log(static_cast<double>(n) * gamma, set);
  });

  HybridEstimate est;
  est.replicas = replicas;
  est.n = n;
  est.log_p_hat = log_sum_exp(log_terms) - std::log(static_cast<double>(replicas));
  est.slope = -est.log_p_hat / static_cast<double>(n);
  double mean = 0.0;
  for (double g : phis) mean += g;
  est.mean_phi = mean / static_cast<double>(replicas);
  return est;
}

}  // namespace misq
