#include "misq/background.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace misq {

namespace {

void check_distribution(const std::vector<double>& p, int d) {
  if (static_cast<int>(p.size()) != d)
    throw std::invalid_argument("BackgroundSpec: initial distribution size mismatch");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw std::invalid_argument("BackgroundSpec: initial probabilities must be >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("BackgroundSpec: initial distribution must sum to 1");
}

int draw_categorical(const std::vector<double>& p, RngStream& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    acc += p[j];
    if (u < acc) return static_cast<int>(j);
  }
  return static_cast<int>(p.size()) - 1;
}

// Exact jump-chain simulation: exponential holding time at the exit rate,
// then a categorical draw over the off-diagonal rates.
void sample_ctmc(const GeneratorMatrix& q, const std::vector<double>& initial, double horizon,
                 RngStream& rng, std::vector<double>& times, std::vector<double>& states) {
  int state = draw_categorical(initial, rng);
  double now = 0.0;
  times.push_back(0.0);
  states.push_back(state);
  while (true) {
    const double rate = q.exit_rate(state);
    if (rate <= 0.0) return;
    now += rng.exponential() / rate;
    if (now > horizon) return;
    const double u = rng.uniform() * rate;
    double acc = 0.0;
    int next = state;
    for (int j = 0; j < q.dimension(); ++j) {
      if (j == state || q.rate(state, j) <= 0.0) continue;
      next = j;  // falls through to the last positive-rate state on round-off
      acc += q.rate(state, j);
      if (u < acc) break;
    }
    state = next;
    times.push_back(now);
    states.push_back(state);
  }
}

StepPath sample_brownian_grid(double horizon, double h, double x0, bool reflect, double scale,
                              const StateSpace& space, RngStream& rng) {
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(horizon / h - 1e-9)));
  std::vector<double> times(steps), values(steps);
  const double sqrt_h = std::sqrt(h);
  double x = x0;
  for (std::size_t i = 0; i < steps; ++i) {
    times[i] = static_cast<double>(i) * h;
    values[i] = x * scale;
    x += sqrt_h * rng.normal();
    if (reflect) {
      double m = std::fmod(x, 2.0);
      if (m < 0.0) m += 2.0;
      x = m <= 1.0 ? m : 2.0 - m;
    }
  }
  return StepPath(space, std::move(times), std::move(values), horizon);
}

// Inner infinite-server feed: arrivals by exact time change of a unit
// Poisson process through the arrival-rate integral, unit-rate requirements,
// departures by exact inversion of the cumulative work.
StepPath sample_mmis(const MmisFeedSpec& spec, double horizon, RngStream& rng) {
  std::vector<double> ctimes, cstates;
  sample_ctmc(spec.q, spec.initial, horizon, rng, ctimes, cstates);
  const std::size_t nseg = ctimes.size();

  // Cumulative arrival mass and work at segment ends (index i covers
  // [ctimes[i], ctimes[i+1]) with the last segment ending at the horizon).
  std::vector<double> seg_end(nseg), lam_cum(nseg + 1, 0.0), work_cum(nseg + 1, 0.0);
  for (std::size_t i = 0; i < nseg; ++i) {
    seg_end[i] = (i + 1 < nseg) ? ctimes[i + 1] : horizon;
    const double len = seg_end[i] - ctimes[i];
    const auto s = static_cast<std::size_t>(cstates[i]);
    lam_cum[i + 1] = lam_cum[i] + spec.lambda[s] * len;
    work_cum[i + 1] = work_cum[i] + spec.mu[s] * len;
  }

  struct Event { double time; int delta; };
  std::vector<Event> events;
  double target = rng.exponential();
  for (std::size_t i = 0; i < nseg; ++i) {
    const auto s = static_cast<std::size_t>(cstates[i]);
    const double rate = spec.lambda[s];
    if (rate <= 0.0) continue;
    while (target <= lam_cum[i + 1]) {
      const double tau = ctimes[i] + (target - lam_cum[i]) / rate;
      events.push_back({tau, +1});
      // Departure: first time the work done since tau reaches the (unit-rate)
      // requirement.
      const double wtau = work_cum[i] + spec.mu[s] * (tau - ctimes[i]);
      const double wgoal = wtau + rng.exponential();
      if (wgoal <= work_cum[nseg]) {
        const auto it = std::lower_bound(work_cum.begin() + 1, work_cum.end(), wgoal);
        const auto k = static_cast<std::size_t>(it - work_cum.begin()) - 1;
        const auto ks = static_cast<std::size_t>(cstates[k]);
        const double m = spec.mu[ks];
        const double dep = m > 0.0 ? ctimes[k] + (wgoal - work_cum[k]) / m : seg_end[k];
        if (dep <= horizon) events.push_back({dep, -1});
      }
      target += rng.exponential();
    }
  }

  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.time < b.time || (a.time == b.time && a.delta < b.delta); });
  std::vector<double> times{0.0}, counts{0.0};
  double level = 0.0;
  for (std::size_t i = 0; i < events.size();) {
    std::size_t j = i;
    double t = events[i].time;
    while (j < events.size() && events[j].time == t) level += events[j++].delta;
    if (t == 0.0) { counts[0] = level; } else { times.push_back(t); counts.push_back(level); }
    i = j;
  }
  return StepPath(StateSpace::nonneg_int(), std::move(times), std::move(counts), horizon);
}

}  // namespace

BackgroundSpec BackgroundSpec::deterministic(StepPath path) {
  return BackgroundSpec(DeterministicSpec{std::move(path)});
}

BackgroundSpec BackgroundSpec::ctmc(GeneratorMatrix q, std::vector<double> initial) {
  check_distribution(initial, q.dimension());
  return BackgroundSpec(CtmcSpec{std::move(q), std::move(initial)});
}

BackgroundSpec BackgroundSpec::time_scaled_ctmc(GeneratorMatrix q, std::vector<double> initial,
                                                double epsilon, int n) {
  check_distribution(initial, q.dimension());
  if (!(epsilon > 0.0)) throw std::invalid_argument("BackgroundSpec: epsilon must be > 0");
  if (n < 1) throw std::invalid_argument("BackgroundSpec: scale index n must be >= 1");
  return BackgroundSpec(TimeScaledCtmcSpec{std::move(q), std::move(initial), epsilon, n});
}

BackgroundSpec BackgroundSpec::reflected_bm(double x0, double grid_step) {
  if (!(x0 > 0.0 && x0 < 1.0))
    throw std::invalid_argument("BackgroundSpec: x0 must lie strictly inside (0, 1)");
  if (!(grid_step > 0.0)) throw std::invalid_argument("BackgroundSpec: grid step must be > 0");
  return BackgroundSpec(ReflectedBmSpec{x0, grid_step});
}

BackgroundSpec BackgroundSpec::scaled_bm(int n, double grid_step) {
  if (n < 1) throw std::invalid_argument("BackgroundSpec: scale index n must be >= 1");
  if (!(grid_step > 0.0)) throw std::invalid_argument("BackgroundSpec: grid step must be > 0");
  return BackgroundSpec(ScaledBmSpec{n, grid_step});
}

BackgroundSpec BackgroundSpec::mmis_feed(GeneratorMatrix q, std::vector<double> initial,
                                         std::vector<double> lambda, std::vector<double> mu) {
  check_distribution(initial, q.dimension());
  const auto d = static_cast<std::size_t>(q.dimension());
  if (lambda.size() != d || mu.size() != d)
    throw std::invalid_argument("BackgroundSpec: inner rate tables must match the inner chain");
  for (double v : lambda)
    if (!(v >= 0.0)) throw std::invalid_argument("BackgroundSpec: inner arrival rates must be >= 0");
  for (double v : mu)
    if (!(v >= 0.0)) throw std::invalid_argument("BackgroundSpec: inner work rates must be >= 0");
  return BackgroundSpec(MmisFeedSpec{std::move(q), std::move(initial), std::move(lambda), std::move(mu)});
}

StateSpace BackgroundSpec::state_space() const {
  struct Visitor {
    StateSpace operator()(const DeterministicSpec& s) const { return s.path.space(); }
    StateSpace operator()(const CtmcSpec& s) const { return StateSpace::finite(s.q.dimension()); }
    StateSpace operator()(const TimeScaledCtmcSpec& s) const { return StateSpace::finite(s.q.dimension()); }
    StateSpace operator()(const ReflectedBmSpec&) const { return StateSpace::interval(0.0, 1.0); }
    StateSpace operator()(const ScaledBmSpec&) const { return StateSpace::real_line(); }
    StateSpace operator()(const MmisFeedSpec&) const { return StateSpace::nonneg_int(); }
  };
  return std::visit(Visitor{}, v_);
}

BackgroundSpec BackgroundSpec::with_scale_index(int n) const {
  if (n < 1) throw std::invalid_argument("BackgroundSpec: scale index n must be >= 1");
  if (const auto* ts = std::get_if<TimeScaledCtmcSpec>(&v_))
    return BackgroundSpec(TimeScaledCtmcSpec{ts->q, ts->initial, ts->epsilon, n});
  if (const auto* sb = std::get_if<ScaledBmSpec>(&v_))
    return BackgroundSpec(ScaledBmSpec{n, sb->grid_step});
  return *this;
}

StepPath sample_path(const BackgroundSpec& spec, double horizon, RngStream& rng) {
  if (!(horizon >= 0.0)) throw std::invalid_argument("sample_path: horizon must be >= 0");
  struct Visitor {
    double horizon;
    RngStream& rng;

    StepPath operator()(const DeterministicSpec& s) const {
      if (s.path.horizon() < horizon)
        throw std::invalid_argument("sample_path: deterministic path does not reach the horizon");
      return s.path.restricted(horizon);
    }
    StepPath operator()(const CtmcSpec& s) const {
      std::vector<double> times, states;
      sample_ctmc(s.q, s.initial, horizon, rng, times, states);
      return StepPath(StateSpace::finite(s.q.dimension()), std::move(times), std::move(states), horizon);
    }
    StepPath operator()(const TimeScaledCtmcSpec& s) const {
      const double factor = std::pow(static_cast<double>(s.n), 1.0 + s.epsilon);
      std::vector<double> times, states;
      sample_ctmc(s.q.scaled(factor), s.initial, horizon, rng, times, states);
      return StepPath(StateSpace::finite(s.q.dimension()), std::move(times), std::move(states), horizon);
    }
    StepPath operator()(const ReflectedBmSpec& s) const {
      return sample_brownian_grid(horizon, s.grid_step, s.x0, true, 1.0,
                                  StateSpace::interval(0.0, 1.0), rng);
    }
    StepPath operator()(const ScaledBmSpec& s) const {
      return sample_brownian_grid(horizon, s.grid_step, 0.0, false,
                                  1.0 / std::sqrt(static_cast<double>(s.n)),
                                  StateSpace::real_line(), rng);
    }
    StepPath operator()(const MmisFeedSpec& s) const { return sample_mmis(s, horizon, rng); }
  };
  return std::visit(Visitor{horizon, rng}, spec.variant());
}

}  // namespace misq
