#include "misq/rate_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "misq/numerics.hpp"
#include "misq/poisson_ldp.hpp"
#include "misq/schilder.hpp"

namespace misq {

PsiSpec PsiSpec::degenerate(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("PsiSpec: degenerate location must be finite and >= 0");
  return PsiSpec(DegeneratePsi{rho});
}

PsiSpec PsiSpec::tabulated(std::vector<double> grid, std::vector<double> values) {
  if (grid.size() != values.size() || grid.empty())
    throw std::invalid_argument("PsiSpec: grid and values must be nonempty and equal length");
  bool any_finite = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0)
      throw std::invalid_argument("PsiSpec: gamma grid must be finite and >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::invalid_argument("PsiSpec: gamma grid must be strictly increasing");
    if (std::isnan(values[i]) || values[i] < 0.0)
      throw std::invalid_argument("PsiSpec: psi values must be >= 0 (infinity allowed)");
    any_finite = any_finite || std::isfinite(values[i]);
  }
  if (!any_finite) throw std::invalid_argument("PsiSpec: psi must be finite somewhere");
  return PsiSpec(TabulatedPsi{std::move(grid), std::move(values)});
}

PsiSpec PsiSpec::schilder(Modulation mod, double t, int segments, double gamma_max,
                          int gamma_points) {
  if (!(t > 0.0)) throw std::invalid_argument("PsiSpec: t must be > 0");
  if (segments < 1 || gamma_points < 2 || !(gamma_max > 0.0))
    throw std::invalid_argument("PsiSpec: bad variational-psi parameters");
  return PsiSpec(SchilderPsi{std::move(mod), t, segments, gamma_max, gamma_points});
}

double rate_I_unscaled(const AttainableInterval& interval, double a) {
  if (!(interval.a_minus >= 0.0) ||
      (!interval.a_plus_infinite && !(interval.a_plus >= interval.a_minus)))
    throw std::invalid_argument("rate_I_unscaled: invalid attainable interval");
  if (std::isnan(a)) throw std::invalid_argument("rate_I_unscaled: a must not be NaN");
  if (a < 0.0) return kInf;
  if (a < interval.a_minus) return ell(interval.a_minus, a);
  if (interval.a_plus_infinite || a <= interval.a_plus) return 0.0;
  return ell(interval.a_plus, a);
}

namespace {

double tabulated_min(const TabulatedPsi& tab, double a) {
  const std::size_t n = tab.grid.size();
  double best = kInf;
  std::size_t best_i = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(tab.values[i])) continue;
    const double v = ell(tab.grid[i], a) + tab.values[i];
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  if (best_i == n) return kInf;

  // Ternary polish on the two segments adjacent to the grid argmin, with psi
  // linearly interpolated; ell is convex in gamma so each segment objective
  // is convex.
  const auto seg_min = [&](std::size_t i0, std::size_t i1) {
    if (!std::isfinite(tab.values[i0]) || !std::isfinite(tab.values[i1])) return kInf;
    double lo = tab.grid[i0], hi = tab.grid[i1];
    const auto f = [&](double g) {
      const double w = (g - tab.grid[i0]) / (tab.grid[i1] - tab.grid[i0]);
      return ell(g, a) + (1.0 - w) * tab.values[i0] + w * tab.values[i1];
    };
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (f(m1) <= f(m2)) hi = m2;
      else lo = m1;
    }
    return f(0.5 * (lo + hi));
  };
  if (best_i > 0) best = std::min(best, seg_min(best_i - 1, best_i));
  if (best_i + 1 < n) best = std::min(best, seg_min(best_i, best_i + 1));
  return best;
}

}  // namespace

PsiSpec tabulate_psi(const PsiSpec& psi, int gamma_points) {
  const auto* sch = std::get_if<SchilderPsi>(&psi.variant());
  if (sch == nullptr) return psi;
  const int points = gamma_points > 0 ? gamma_points : sch->gamma_points;
  std::vector<double> grid(static_cast<std::size_t>(points)), values(grid.size());
  for (int i = 0; i < points; ++i) {
    const double g = sch->gamma_max * i / (points - 1);
    grid[static_cast<std::size_t>(i)] = g;
    const SchilderResult r = schilder_psi(sch->mod, sch->t, g, sch->segments);
    values[static_cast<std::size_t>(i)] = r.converged ? r.value : kInf;
  }
  return PsiSpec::tabulated(std::move(grid), std::move(values));
}

double rate_I_general(const PsiSpec& psi, double a, int gamma_points) {
  if (std::isnan(a)) throw std::invalid_argument("rate_I_general: a must not be NaN");
  if (a < 0.0) return kInf;
  if (const auto* deg = std::get_if<DegeneratePsi>(&psi.variant())) return ell(deg->rho, a);
  if (const auto* tab = std::get_if<TabulatedPsi>(&psi.variant())) return tabulated_min(*tab, a);
  const PsiSpec tabbed = tabulate_psi(psi, gamma_points);
  return rate_I_general(tabbed, a, 0);
}

}  // namespace misq
