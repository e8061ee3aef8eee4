#include "misq/queue_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "misq/numerics.hpp"
#include "misq/phi.hpp"

namespace misq {

SimResult simulate_direct(const BackgroundSpec& spec, const Modulation& mod, double t,
                          RngStream& rng, bool keep_path) {
  if (t < 0.0) throw std::invalid_argument("simulate_direct: t must be >= 0");
  if (!spec.state_space().compatible_with(mod.space()))
    throw std::invalid_argument("simulate_direct: background and modulation state spaces differ");
  StepPath path = sample_path(spec, t, rng);
  const auto& times = path.times();
  const auto& states = path.states();
  const std::size_t nseg = times.size();

  // Segment ends plus suffix work integrals: work_tail[i] = ∫ over [end_i, t].
  std::vector<double> seg_end(nseg), work_tail(nseg + 1, 0.0);
  for (std::size_t i = 0; i < nseg; ++i) seg_end[i] = (i + 1 < nseg) ? times[i + 1] : t;
  for (std::size_t i = nseg; i-- > 0;)
    work_tail[i] = work_tail[i + 1] + mod.mu(states[i]) * (seg_end[i] - times[i]);
  // work_tail[i] currently covers [times[i], t]; shift to segment ends.
  for (std::size_t i = 0; i < nseg; ++i)
    work_tail[i] = work_tail[i + 1];

  long long count = 0;
  double arrival_goal = rng.exponential();
  double lam_cum = 0.0;
  for (std::size_t i = 0; i < nseg; ++i) {
    const double rate = mod.lambda(states[i]);
    const double seg_mass = rate * (seg_end[i] - times[i]);
    if (rate > 0.0) {
      while (arrival_goal <= lam_cum + seg_mass) {
        const double tau = times[i] + (arrival_goal - lam_cum) / rate;
        const double arrival_state = tau < seg_end[i] || i + 1 >= nseg ? states[i] : states[i + 1];
        const double kap = mod.kappa(arrival_state);
        const double requirement_scaled = rng.exponential();  // standard; actual is this / kappa
        // Work available to the job on [tau, t].
        const double work = work_tail[i] + mod.mu(states[i]) * (seg_end[i] - tau);
        // Gone by t iff requirement <= work, i.e. requirement_scaled <= kappa * work.
        if (kap <= 0.0 || requirement_scaled > kap * work) ++count;
        arrival_goal += rng.exponential();
      }
    }
    lam_cum += seg_mass;
  }

  SimResult r;
  r.count = count;
  if (keep_path) r.path = std::move(path);
  return r;
}

SimResult simulate_conditional(const BackgroundSpec& spec, const Modulation& mod, double t,
                               RngStream& rng, bool keep_path) {
  if (t < 0.0) throw std::invalid_argument("simulate_conditional: t must be >= 0");
  if (!spec.state_space().compatible_with(mod.space()))
    throw std::invalid_argument("simulate_conditional: background and modulation state spaces differ");
  StepPath path = sample_path(spec, t, rng);
  SimResult r;
  r.phi_value = phi(path, mod, t);
  r.count = poisson_sample(r.phi_value, rng);
  if (keep_path) r.path = std::move(path);
  return r;
}

long long poisson_sample(double mean, RngStream& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("poisson_sample: mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  return std::poisson_distribution<long long>(mean)(rng.engine());
}

std::map<long long, double> empirical_pmf(std::span<const long long> counts) {
  if (counts.empty()) throw std::invalid_argument("empirical_pmf: empty sample");
  std::map<long long, double> pmf;
  for (long long c : counts) pmf[c] += 1.0;
  for (auto& [k, v] : pmf) v /= static_cast<double>(counts.size());
  return pmf;
}

double tv_distance(const std::map<long long, double>& p, const std::map<long long, double>& q) {
  double d = 0.0;
  auto ip = p.begin();
  auto iq = q.begin();
  while (ip != p.end() || iq != q.end()) {
    if (iq == q.end() || (ip != p.end() && ip->first < iq->first)) {
      d += ip->second;
      ++ip;
    } else if (ip == p.end() || iq->first < ip->first) {
      d += iq->second;
      ++iq;
    } else {
      d += std::abs(ip->second - iq->second);
      ++ip;
      ++iq;
    }
  }
  return 0.5 * d;
}

ChiSquareResult chi_square_two_sample(std::span<const long long> a, std::span<const long long> b,
                                      double min_pooled) {
  if (a.empty() || b.empty()) throw std::invalid_argument("chi_square_two_sample: empty sample");
  std::map<long long, std::pair<double, double>> bins;
  for (long long v : a) bins[v].first += 1.0;
  for (long long v : b) bins[v].second += 1.0;

  // Pool adjacent count values until each bin is populated enough for the
  // chi-square approximation.
  std::vector<std::pair<double, double>> pooled;
  double ca = 0.0, cb = 0.0;
  for (const auto& [k, ab] : bins) {
    ca += ab.first;
    cb += ab.second;
    if (ca + cb >= min_pooled) {
      pooled.emplace_back(ca, cb);
      ca = cb = 0.0;
    }
  }
  if (ca + cb > 0.0) {
    if (pooled.empty()) pooled.emplace_back(ca, cb);
    else {
      pooled.back().first += ca;
      pooled.back().second += cb;
    }
  }

  ChiSquareResult r;
  if (pooled.size() < 2) return r;  // everything in one bin: nothing to test
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double k1 = std::sqrt(nb / na), k2 = std::sqrt(na / nb);
  for (const auto& [oa, ob] : pooled)
    r.statistic += (k1 * oa - k2 * ob) * (k1 * oa - k2 * ob) / (oa + ob);
  r.dof = static_cast<int>(pooled.size()) - 1;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

}  // namespace misq
