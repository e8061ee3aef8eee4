#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace misq::testing {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

double phi_quadrature(const StepPath& path, const Modulation& mod, double t, double tol) {
  const auto& times = path.times();
  const auto& states = path.states();
  std::vector<double> starts, vals;
  for (std::size_t i = 0; i < times.size() && times[i] < t; ++i) {
    starts.push_back(times[i]);
    vals.push_back(states[i]);
  }
  if (starts.empty()) return 0.0;
  const std::size_t n = starts.size();
  std::vector<double> ends(n);
  for (std::size_t i = 0; i < n; ++i) ends[i] = i + 1 < n ? starts[i + 1] : t;

  // Forward-built suffix work integrals at segment starts.
  std::vector<double> work_from_start(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;)
    work_from_start[i] = work_from_start[i + 1] + mod.mu(vals[i]) * (ends[i] - starts[i]);

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = vals[i];
    const double lam = mod.lambda(x), kap = mod.kappa(x), mu = mod.mu(x);
    const auto integrand = [&](double s) {
      const double inner = mu * (ends[i] - s) + work_from_start[i + 1];
      return lam * std::exp(-kap * inner);
    };
    total += adaptive_simpson(integrand, starts[i], ends[i], tol * std::max(1.0, lam));
  }
  return total;
}

double sup_dist_step_vs_pwlinear(const StepPath& step, std::span<const double> node_times,
                                 std::span<const double> node_values, double T) {
  const auto linear_at = [&](double s) {
    if (s <= node_times.front()) return node_values.front();
    if (s >= node_times.back()) return node_values.back();
    const auto it = std::upper_bound(node_times.begin(), node_times.end(), s);
    const auto i = static_cast<std::size_t>(it - node_times.begin());
    const double w = (s - node_times[i - 1]) / (node_times[i] - node_times[i - 1]);
    return (1.0 - w) * node_values[i - 1] + w * node_values[i];
  };
  std::vector<double> cuts{0.0, T};
  for (double v : step.times())
    if (v < T) cuts.push_back(v);
  for (double v : node_times)
    if (v < T) cuts.push_back(v);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Between cuts the step value is constant and the interpolant is linear,
  // so the interval sup sits at an endpoint (left closed, right by
  // continuity of the interpolant).
  double d = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double c = step.value_at(cuts[i]);
    d = std::max({d, std::abs(linear_at(cuts[i]) - c), std::abs(linear_at(cuts[i + 1]) - c)});
  }
  d = std::max(d, std::abs(linear_at(T) - step.value_at(T)));
  return d;
}

long double poisson_set_log_prob_ld(double mean, long long lo, long long hi) {
  lo = std::max<long long>(lo, 0);
  const bool half_line = hi < 0;
  if (!half_line && hi < lo) return -std::numeric_limits<long double>::infinity();
  if (mean == 0.0) return lo == 0 ? 0.0L : -std::numeric_limits<long double>::infinity();

  const long double m = mean;
  const auto anchor = half_line ? lo : std::clamp<long long>(static_cast<long long>(mean), lo, hi);
  const long double log_anchor = -m + static_cast<long double>(anchor) * std::log(m) -
                                 std::lgamma(static_cast<long double>(anchor) + 1.0L);

  long double sum = 1.0L, term = 1.0L;
  for (long long k = anchor; half_line || k < hi; ++k) {
    term *= m / static_cast<long double>(k + 1);
    sum += term;
    if (term < sum * 1e-30L) break;
  }
  term = 1.0L;
  for (long long k = anchor; k > lo; --k) {
    term *= static_cast<long double>(k) / m;
    sum += term;
    if (term < sum * 1e-30L) break;
  }
  return log_anchor + std::log(sum);
}

double upper_reg_gamma_quadrature(double s, double x) {
  const double log_norm = std::lgamma(s);
  const auto density = [&](double u) { return std::exp((s - 1.0) * std::log(u) - u - log_norm); };
  // Integrate to a cutoff far past the mass, in panels no wider than the
  // density's scale so the adaptive probes cannot miss the peak.
  const double cutoff = std::max(x, s) + 60.0 * std::sqrt(std::max(s, 1.0)) + 60.0;
  if (x >= cutoff) return 0.0;
  const double width = std::max(1.0, std::sqrt(s));
  double total = 0.0;
  for (double lo = x; lo < cutoff; lo += width)
    total += adaptive_simpson(density, lo, std::min(lo + width, cutoff), 1e-15);
  return total;
}

StepPath random_finite_step_path(int states, int segments, double horizon, RngStream& rng) {
  if (segments < 1) throw std::invalid_argument("random_finite_step_path: segments >= 1");
  std::vector<double> ts{0.0};
  while (static_cast<int>(ts.size()) < segments) {
    const double u = rng.uniform() * horizon;
    if (u > 0.0) ts.push_back(u);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<double> xs(ts.size());
  for (auto& x : xs) x = std::floor(rng.uniform() * states);
  return StepPath(StateSpace::finite(states), std::move(ts), std::move(xs), horizon);
}

}  // namespace misq::testing
