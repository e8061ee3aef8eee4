#include "misq/poisson_ldp.hpp"

#include <cmath>
#include <stdexcept>

#include "misq/numerics.hpp"

namespace misq {

double ell(double gamma, double a) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("ell: gamma must be finite and >= 0");
  if (std::isnan(a)) throw std::invalid_argument("ell: a must not be NaN");
  if (a < 0.0 || std::isinf(a)) return kInf;
  if (a == 0.0) return gamma;
  if (gamma == 0.0) return kInf;
  return gamma - a + a * std::log(a / gamma);
}

double log_poisson_pmf(long long k, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("log_poisson_pmf: mean must be finite and >= 0");
  if (k < 0) return -kInf;
  if (mean == 0.0) return k == 0 ? 0.0 : -kInf;
  const double kd = static_cast<double>(k);
  return -mean + kd * std::log(mean) - std::lgamma(kd + 1.0);
}

namespace {

constexpr double kTermCutoff = 1e-25;

// Sum of pmf terms from k0 outward in the given direction, relative to the
// anchor term at k0 (recurrence in the term ratios, so only one lgamma call
// per sum). Returns {relative sum, log of anchor}.
struct DirectedSum {
  double rel_sum;
  double log_anchor;
};

DirectedSum sum_down(double mean, long long k0, long long lo) {
  DirectedSum r{0.0, log_poisson_pmf(k0, mean)};
  if (k0 < lo || r.log_anchor == -kInf) return r;
  double term = 1.0;
  r.rel_sum = 1.0;
  for (long long k = k0; k > lo; --k) {
    term *= static_cast<double>(k) / mean;  // pmf(k-1)/pmf(k)
    r.rel_sum += term;
    if (term < kTermCutoff * r.rel_sum) break;
  }
  return r;
}

DirectedSum sum_up(double mean, long long k0, long long hi) {
  DirectedSum r{0.0, log_poisson_pmf(k0, mean)};
  if (k0 > hi || r.log_anchor == -kInf) return r;
  double term = 1.0;
  r.rel_sum = 1.0;
  for (long long k = k0; k < hi; ++k) {
    term *= mean / static_cast<double>(k + 1);  // pmf(k+1)/pmf(k)
    r.rel_sum += term;
    if (term < kTermCutoff * r.rel_sum) break;
  }
  return r;
}

double combine(const DirectedSum& s) {
  if (s.rel_sum <= 0.0) return -kInf;
  return s.log_anchor + std::log(s.rel_sum);
}

}  // namespace

double poisson_tail_log(double mean, const IntegerSet& set) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("poisson_tail_log: mean must be finite and >= 0");
  const long long lo = std::max<long long>(set.lo, 0);
  const long long hi = set.hi;
  if (hi < lo) return -kInf;
  if (mean == 0.0) return lo == 0 ? 0.0 : -kInf;

  const auto mode = static_cast<long long>(std::floor(mean));
  if (mode < lo) {
    // Entirely in the upper tail: anchor at the inner edge.
    return std::min(0.0, combine(sum_up(mean, lo, hi)));
  }
  if (!set.half_line() && mode > hi) {
    return std::min(0.0, combine(sum_down(mean, hi, lo)));
  }

  // Mode inside the set. Try the complementary mass first: both pieces decay
  // away from the mode, and log1p keeps full precision when the set carries
  // nearly everything.
  double complement = 0.0;
  if (lo > 0) {
    const auto below = sum_down(mean, lo - 1, 0);
    complement += below.rel_sum == 0.0 ? 0.0 : std::exp(below.log_anchor) * below.rel_sum;
  }
  if (!set.half_line()) {
    const auto above = sum_up(mean, hi + 1, IntegerSet::unbounded());
    complement += above.rel_sum == 0.0 ? 0.0 : std::exp(above.log_anchor) * above.rel_sum;
  }
  if (complement < 0.5) return std::log1p(-complement);

  // Thin set around the mode: sum it directly on both sides of the anchor.
  const double log_down = combine(sum_down(mean, mode, lo));
  const double log_up = mode + 1 <= hi ? combine(sum_up(mean, mode + 1, hi)) : -kInf;
  const double parts[2] = {log_down, log_up};
  return std::min(0.0, log_sum_exp(parts));
}

}  // namespace misq
