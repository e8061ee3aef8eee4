#include "misq/schilder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "misq/numerics.hpp"
#include "misq/phi.hpp"

namespace misq {

double path_energy(const std::vector<double>& node_times, const std::vector<double>& node_values) {
  double e = 0.0;
  for (std::size_t i = 1; i < node_times.size(); ++i) {
    const double h = node_times[i] - node_times[i - 1];
    const double dy = node_values[i] - node_values[i - 1];
    e += 0.5 * dy * dy / h;
  }
  return e;
}

namespace {

double interp_nodes(const std::vector<double>& ts, const std::vector<double>& ys, double s) {
  if (s <= ts.front()) return ys.front();
  if (s >= ts.back()) return ys.back();
  const auto it = std::upper_bound(ts.begin(), ts.end(), s);
  const auto i = static_cast<std::size_t>(it - ts.begin());
  const double w = (s - ts[i - 1]) / (ts[i] - ts[i - 1]);
  return (1.0 - w) * ys[i - 1] + w * ys[i];
}

}  // namespace

double phi_piecewise_linear(const Modulation& mod, double t, const std::vector<double>& node_times,
                            const std::vector<double>& node_values, int sub_steps) {
  // Left-endpoint discretization of the interpolant on a fixed fine grid;
  // the same evaluator for every segment count keeps feasible sets nested
  // under refinement.
  const int s = std::max(sub_steps, 8);
  const double h = t / s;
  const auto& lam_map = mod.lambda_map();
  const auto& kap_map = mod.kappa_map();
  const auto& mu_map = mod.mu_map();
  double total = 0.0, tail_work = 0.0;
  for (int i = s; i-- > 0;) {
    const double x = interp_nodes(node_times, node_values, i * h);
    const double kap = kap_map(x);
    total += lam_map(x) * std::exp(-kap * tail_work) * h * em1(kap * mu_map(x) * h);
    tail_work += mu_map(x) * h;
  }
  return total;
}

StepPath schilder_path(const Modulation& mod, double t, const SchilderResult& result,
                       int sub_steps) {
  const int s = std::max(sub_steps, 8);
  const double h = t / s;
  std::vector<double> ts(static_cast<std::size_t>(s)), xs(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    ts[static_cast<std::size_t>(i)] = i * h;
    xs[static_cast<std::size_t>(i)] = interp_nodes(result.node_times, result.node_values, i * h);
  }
  return StepPath(mod.space(), std::move(ts), std::move(xs), t);
}

namespace {

struct Problem {
  const Modulation& mod;
  double t;
  double target;
  int sub_steps;
  std::vector<double> node_times;

  double phi_of(const std::vector<double>& y) const {
    return phi_piecewise_linear(mod, t, node_times, y, sub_steps);
  }
};

// One augmented-penalty run from a given start; gradient descent with
// backtracking inside each stage.
SchilderResult solve_from(const Problem& pr, std::vector<double> y, const SchilderOptions& opts) {
  const std::size_t n = pr.node_times.size();
  const double h = pr.node_times[1] - pr.node_times[0];
  double eta = 0.0;
  double w = opts.penalty_init;

  const auto objective = [&](const std::vector<double>& yy, double& c_out) {
    c_out = pr.phi_of(yy) - pr.target;
    return path_energy(pr.node_times, yy) + eta * c_out + w * c_out * c_out;
  };

  std::vector<double> grad(n, 0.0), trial(n, 0.0), yp(n, 0.0), ym(n, 0.0);
  double c = 0.0;
  double obj = objective(y, c);
  for (int stage = 0; stage < opts.penalty_stages; ++stage) {
    double alpha = 1.0;
    for (int iter = 0; iter < opts.max_iters_per_stage; ++iter) {
      // dE/dy_i is analytic; the constraint part uses central differences.
      const double cw = eta + 2.0 * w * c;
      yp = y;
      ym = y;
      double gmax = 0.0;
      for (std::size_t i = 1; i < n; ++i) {
        double g = (2.0 * y[i] - y[i - 1] - (i + 1 < n ? y[i + 1] : y[i])) / h;
        const double fd = opts.fd_step * std::max(1.0, std::abs(y[i]));
        yp[i] = y[i] + fd;
        ym[i] = y[i] - fd;
        const double dphi = (pr.phi_of(yp) - pr.phi_of(ym)) / (2.0 * fd);
        yp[i] = y[i];
        ym[i] = y[i];
        g += cw * dphi;
        grad[i] = g;
        gmax = std::max(gmax, std::abs(g));
      }
      if (gmax < 1e-10 * std::max(1.0, std::abs(obj))) break;

      alpha = std::min(alpha * 2.0, 1.0 / std::max(1e-12, gmax));
      double gnorm2 = 0.0;
      for (std::size_t i = 1; i < n; ++i) gnorm2 += grad[i] * grad[i];
      bool moved = false;
      while (alpha > 1e-18) {
        trial = y;
        for (std::size_t i = 1; i < n; ++i) trial[i] = y[i] - alpha * grad[i];
        double c_trial = 0.0;
        const double obj_trial = objective(trial, c_trial);
        if (obj_trial <= obj - 1e-4 * alpha * gnorm2) {
          y.swap(trial);
          obj = obj_trial;
          c = c_trial;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
    if (std::abs(c) <= opts.constraint_tol && stage >= 2) break;
    eta += 2.0 * w * c;
    w *= opts.penalty_mult;
    obj = objective(y, c);
  }

  SchilderResult r;
  r.node_times = pr.node_times;
  r.node_values = std::move(y);
  r.constraint_violation = std::abs(c);
  r.converged = r.constraint_violation <= opts.constraint_tol;
  r.value = path_energy(r.node_times, r.node_values);
  return r;
}

// Feasible linear ramp y_i = slope * t_i, located by bracketing the
// constraint in the slope.
bool find_feasible_ramp(const Problem& pr, std::vector<double>& out) {
  const auto c_of = [&](double slope) {
    std::vector<double> y(pr.node_times.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = slope * pr.node_times[i];
    return pr.phi_of(y) - pr.target;
  };
  const double scan[] = {0.0, 0.25, -0.25, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0, 8.0, -8.0, 16.0, -16.0};
  double lo = 0.0, hi = 0.0;
  bool found = false;
  double prev_s = scan[0], prev_c = c_of(scan[0]);
  for (std::size_t i = 1; i < std::size(scan) && !found; ++i) {
    const double s = scan[i], cc = c_of(s);
    if ((prev_c <= 0.0 && cc >= 0.0) || (prev_c >= 0.0 && cc <= 0.0)) {
      lo = prev_s;
      hi = s;
      found = true;
    }
    prev_s = s;
    prev_c = cc;
  }
  if (!found) return false;
  double clo = c_of(lo);
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double cm = c_of(mid);
    if ((clo <= 0.0) == (cm <= 0.0)) {
      lo = mid;
      clo = cm;
    } else {
      hi = mid;
    }
  }
  const double slope = 0.5 * (lo + hi);
  out.resize(pr.node_times.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = slope * pr.node_times[i];
  return true;
}

}  // namespace

SchilderResult schilder_psi(const Modulation& mod, double t, double target_a, int segments,
                            const SchilderOptions& opts, const std::vector<double>& warm_start) {
  if (!(t > 0.0)) throw std::invalid_argument("schilder_psi: t must be > 0");
  if (segments < 1) throw std::invalid_argument("schilder_psi: segments must be >= 1");
  if (!(target_a >= 0.0)) throw std::invalid_argument("schilder_psi: target must be >= 0");

  Problem pr{mod, t, target_a, opts.sub_steps, {}};
  pr.node_times.resize(static_cast<std::size_t>(segments) + 1);
  for (int i = 0; i <= segments; ++i)
    pr.node_times[static_cast<std::size_t>(i)] = t * i / segments;

  std::vector<std::vector<double>> starts;
  starts.emplace_back(pr.node_times.size(), 0.0);
  std::vector<double> ramp;
  if (find_feasible_ramp(pr, ramp)) starts.push_back(std::move(ramp));
  if (!warm_start.empty()) {
    if (warm_start.size() != pr.node_times.size())
      throw std::invalid_argument("schilder_psi: warm start has the wrong node count");
    starts.push_back(warm_start);
  }

  SchilderResult best;
  bool have = false;
  for (auto& s : starts) {
    SchilderResult r = solve_from(pr, std::move(s), opts);
    const bool better =
        !have || (r.converged && !best.converged) ||
        (r.converged == best.converged && r.value < best.value);
    if (better) best = std::move(r);
    have = true;
  }
  return best;
}

std::vector<SchilderResult> schilder_psi_refined(const Modulation& mod, double t, double target_a,
                                                 const std::vector<int>& segment_schedule,
                                                 const SchilderOptions& opts) {
  std::vector<SchilderResult> out;
  std::vector<double> warm;
  for (int m : segment_schedule) {
    std::vector<double> start;
    if (!out.empty()) {
      // Interpolate the previous optimizer onto the finer node grid.
      start.resize(static_cast<std::size_t>(m) + 1);
      for (int i = 0; i <= m; ++i) {
        const double s = t * i / m;
        start[static_cast<std::size_t>(i)] =
            interp_nodes(out.back().node_times, out.back().node_values, s);
      }
    }
    out.push_back(schilder_psi(mod, t, target_a, m, opts, start));
  }
  return out;
}

}  // namespace misq
