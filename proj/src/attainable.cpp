#include "misq/attainable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "misq/numerics.hpp"

namespace misq {

namespace {

struct Tables {
  std::vector<double> lam, kap, mu;
  int d = 0;
};

Tables extract_tables(const Modulation& mod) {
  if (mod.space().kind() != SpaceKind::Finite)
    throw std::invalid_argument("attainable bounds: finite state space required");
  Tables t;
  t.lam = mod.lambda_table();
  t.kap = mod.kappa_table();
  t.mu = mod.mu_table();
  t.d = mod.space().size();
  return t;
}

struct Bounds {
  double lo, hi;
};

// One value-iteration pass on an m x p grid; returns the extremes of phi_t.
Bounds dp_level(const Tables& tb, double t, int m, int p, double r_max) {
  const double h = t / m;
  const double dr = r_max / (p - 1);
  const int d = tb.d;

  std::vector<double> reward(d), decay(d);
  std::vector<int> step_idx(d);
  std::vector<double> step_frac(d);
  for (int x = 0; x < d; ++x) {
    const auto xi = static_cast<std::size_t>(x);
    reward[xi] = tb.lam[xi] * h * em1(tb.kap[xi] * tb.mu[xi] * h);
    decay[xi] = std::exp(-tb.kap[xi] * dr);
    const double off = tb.mu[xi] * h / dr;
    step_idx[xi] = static_cast<int>(std::floor(off));
    step_frac[xi] = off - step_idx[xi];
  }

  std::vector<double> vmin(static_cast<std::size_t>(p), 0.0), vmax(vmin), nmin(vmin), nmax(vmin);
  std::vector<double> e_run(static_cast<std::size_t>(d));
  for (int step = 0; step < m; ++step) {
    for (int x = 0; x < d; ++x) e_run[static_cast<std::size_t>(x)] = 1.0;
    for (int j = 0; j < p; ++j) {
      if ((j & 1023) == 1023)  // resync the running exponentials
        for (int x = 0; x < d; ++x)
          e_run[static_cast<std::size_t>(x)] = std::exp(-tb.kap[static_cast<std::size_t>(x)] * dr * j);
      double best_min = kInf, best_max = -kInf;
      for (int x = 0; x < d; ++x) {
        const auto xi = static_cast<std::size_t>(x);
        const int idx = j + step_idx[xi];
        double cont_min, cont_max;
        if (idx >= p - 1) {
          cont_min = vmin[static_cast<std::size_t>(p - 1)];
          cont_max = vmax[static_cast<std::size_t>(p - 1)];
        } else {
          const double w = step_frac[xi];
          cont_min = (1.0 - w) * vmin[static_cast<std::size_t>(idx)] + w * vmin[static_cast<std::size_t>(idx + 1)];
          cont_max = (1.0 - w) * vmax[static_cast<std::size_t>(idx)] + w * vmax[static_cast<std::size_t>(idx + 1)];
        }
        const double gain = reward[xi] * e_run[xi];
        best_min = std::min(best_min, gain + cont_min);
        best_max = std::max(best_max, gain + cont_max);
        e_run[xi] *= decay[xi];
      }
      nmin[static_cast<std::size_t>(j)] = best_min;
      nmax[static_cast<std::size_t>(j)] = best_max;
    }
    vmin.swap(nmin);
    vmax.swap(nmax);
  }
  return {vmin[0], vmax[0]};
}

}  // namespace

AttainableReport attainable_bounds_dp(const Modulation& mod, double t, int time_steps, int r_steps,
                                      double tolerance, int max_refinements) {
  if (!(t >= 0.0)) throw std::invalid_argument("attainable_bounds_dp: t must be >= 0");
  if (time_steps < 2 || r_steps < 2)
    throw std::invalid_argument("attainable_bounds_dp: grids need at least 2 steps");
  const Tables tb = extract_tables(mod);

  AttainableReport rep;
  const double mu_max = *std::max_element(tb.mu.begin(), tb.mu.end());
  const double lam_min = *std::min_element(tb.lam.begin(), tb.lam.end());
  const double lam_max = *std::max_element(tb.lam.begin(), tb.lam.end());
  if (t == 0.0 || mu_max * t == 0.0) {
    // No work decay anywhere: phi is the plain time integral of lambda.
    rep.interval = {lam_min * t, lam_max * t, false};
    rep.finest = rep.interval;
    rep.converged = true;
    rep.levels = 1;
    return rep;
  }

  const double r_max = mu_max * t;
  Bounds prev{0.0, 0.0};
  bool have_prev = false;
  int m = time_steps, p = r_steps;
  for (int level = 0; level <= max_refinements; ++level) {
    const Bounds cur = dp_level(tb, t, m, p, r_max);
    rep.levels = level + 1;
    rep.finest = {cur.lo, cur.hi, false};
    if (have_prev) {
      rep.last_change = std::max(std::abs(cur.lo - prev.lo), std::abs(cur.hi - prev.hi));
      // First-order refinement extrapolation off the last halving.
      rep.interval = {std::max(0.0, 2.0 * cur.lo - prev.lo), 2.0 * cur.hi - prev.hi, false};
      if (rep.interval.a_plus < rep.interval.a_minus)
        std::swap(rep.interval.a_minus, rep.interval.a_plus);
      if (rep.last_change < tolerance) {
        rep.converged = true;
        return rep;
      }
    } else {
      rep.interval = rep.finest;
    }
    prev = cur;
    have_prev = true;
    m *= 2;
    p = 2 * (p - 1) + 1;
  }
  rep.converged = false;
  return rep;
}

namespace {

double phi_jump_config(const Tables& tb, double t, std::span<const double> jump_times,
                       std::span<const int> states) {
  // states has jump_times.size() + 1 entries; breakpoints at 0 then the jumps.
  double total = 0.0, tail_work = 0.0;
  const std::size_t k = jump_times.size();
  for (std::size_t i = k + 1; i-- > 0;) {
    const double u = i == 0 ? 0.0 : jump_times[i - 1];
    const double v = i == k ? t : jump_times[i];
    if (v <= u) continue;
    const double len = v - u;
    const auto x = static_cast<std::size_t>(states[i]);
    total += tb.lam[x] * std::exp(-tb.kap[x] * tail_work) * len * em1(tb.kap[x] * tb.mu[x] * len);
    tail_work += tb.mu[x] * len;
  }
  return total;
}

// Golden-section extremum of phi over one jump time within (lo, hi).
double polish_coordinate(const Tables& tb, double t, std::vector<double>& times,
                         std::span<const int> states, std::size_t coord, double lo, double hi,
                         bool maximize) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto eval = [&](double tau) {
    times[coord] = tau;
    const double v = phi_jump_config(tb, t, times, states);
    return maximize ? -v : v;
  };
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = eval(c), fd = eval(d);
  for (int it = 0; it < 90 && (b - a) > 1e-13 * t; ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  const double tau = 0.5 * (a + b);
  times[coord] = tau;
  return phi_jump_config(tb, t, times, states);
}

struct BestConfig {
  double value;
  std::vector<double> times;
  std::vector<int> states;
};

}  // namespace

AttainableInterval attainable_bounds_oracle(const Modulation& mod, double t, int max_jumps,
                                            int time_grid, bool polish) {
  if (!(t >= 0.0)) throw std::invalid_argument("attainable_bounds_oracle: t must be >= 0");
  if (max_jumps < 0 || time_grid < 1)
    throw std::invalid_argument("attainable_bounds_oracle: bad enumeration parameters");
  const Tables tb = extract_tables(mod);
  const int d = tb.d;

  double budget = 0.0;
  for (int k = 0; k <= max_jumps; ++k) {
    double combos = 1.0;
    for (int i = 0; i < k; ++i) combos *= static_cast<double>(time_grid - i) / (i + 1);
    budget += combos * d * std::pow(static_cast<double>(std::max(1, d - 1)), k);
  }
  if (budget > 2e7) throw std::invalid_argument("attainable_bounds_oracle: combinatorial budget exceeded");

  BestConfig best_min{kInf, {}, {}}, best_max{-kInf, {}, {}};
  std::vector<double> grid(static_cast<std::size_t>(time_grid));
  for (int i = 0; i < time_grid; ++i) grid[static_cast<std::size_t>(i)] = t * (i + 1) / (time_grid + 1);

  std::vector<double> jump_times;
  std::vector<int> states, choice;
  for (int k = 0; k <= max_jumps && k <= time_grid; ++k) {
    // Combination indices over the candidate times.
    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
    while (true) {
      jump_times.resize(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) jump_times[static_cast<std::size_t>(i)] = grid[static_cast<std::size_t>(comb[static_cast<std::size_t>(i)])];

      // State sequences with distinct adjacent states, mixed-radix counter.
      choice.assign(static_cast<std::size_t>(k + 1), 0);
      while (true) {
        states.resize(static_cast<std::size_t>(k + 1));
        states[0] = choice[0];
        bool valid = true;
        for (int i = 1; i <= k; ++i) {
          int s = choice[static_cast<std::size_t>(i)];
          if (s >= states[static_cast<std::size_t>(i - 1)]) ++s;  // skip the previous state
          if (s >= d) { valid = false; break; }
          states[static_cast<std::size_t>(i)] = s;
        }
        if (valid) {
          const double v = phi_jump_config(tb, t, jump_times, states);
          if (v < best_min.value) best_min = {v, jump_times, states};
          if (v > best_max.value) best_max = {v, jump_times, states};
        }
        // Advance the counter: first digit 0..d-1, the rest 0..d-2.
        int pos = 0;
        for (; pos <= k; ++pos) {
          const int radix = pos == 0 ? d : d - 1;
          if (++choice[static_cast<std::size_t>(pos)] < radix) break;
          choice[static_cast<std::size_t>(pos)] = 0;
        }
        if (pos > k) break;
      }

      if (k == 0) break;
      int pos = k - 1;
      while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == time_grid - k + pos) --pos;
      if (pos < 0) break;
      ++comb[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < k; ++i) comb[static_cast<std::size_t>(i)] = comb[static_cast<std::size_t>(i - 1)] + 1;
    }
  }

  if (polish) {
    for (BestConfig* cfg : {&best_min, &best_max}) {
      const bool maximize = cfg == &best_max;
      const std::size_t k = cfg->times.size();
      for (int sweep = 0; sweep < 3 && k > 0; ++sweep) {
        for (std::size_t c = 0; c < k; ++c) {
          const double lo = c == 0 ? 0.0 : cfg->times[c - 1];
          const double hi = c + 1 == k ? t : cfg->times[c + 1];
          cfg->value = polish_coordinate(tb, t, cfg->times, cfg->states, c, lo, hi, maximize);
        }
      }
    }
  }
  return {best_min.value, best_max.value, false};
}

AttainableInterval attainable_bounds_truncated(const Modulation& mod, double t, int initial_max_state,
                                               int doublings, int max_jumps, int time_grid) {
  if (mod.space().kind() != SpaceKind::NonNegInt)
    throw std::invalid_argument("attainable_bounds_truncated: nonnegative-integer space required");
  if (initial_max_state < 1 || doublings < 1)
    throw std::invalid_argument("attainable_bounds_truncated: bad truncation parameters");
  int max_state = initial_max_state;
  AttainableInterval prev{}, cur{};
  bool growing = true;
  for (int i = 0; i <= doublings; ++i) {
    cur = attainable_bounds_oracle(truncate_modulation(mod, max_state), t, max_jumps, time_grid);
    if (i > 0) growing = growing && cur.a_plus > prev.a_plus * 1.1 + 1e-9;
    prev = cur;
    max_state *= 2;
  }
  if (growing) {
    cur.a_plus_infinite = true;
    cur.a_plus = kInf;
  }
  return cur;
}

}  // namespace misq
