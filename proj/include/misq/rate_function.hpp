#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "misq/attainable.hpp"
#include "misq/rate_map.hpp"

namespace misq {

// Rate function of the normalized Poisson-mean law under the background
// scaling. Degenerate: all mass at one value (fast averaging regimes).
// Tabulated: values (possibly infinite) on an increasing grid, linearly
// interpolated between finite neighbors. SchilderVariational: evaluated on
// demand by the action minimizer for a Brownian background.
struct DegeneratePsi {
  double rho;
};

struct TabulatedPsi {
  std::vector<double> grid;
  std::vector<double> values;
};

struct SchilderPsi {
  Modulation mod;
  double t;
  int segments;
  double gamma_max;
  int gamma_points;
};

class PsiSpec {
 public:
  using Variant = std::variant<DegeneratePsi, TabulatedPsi, SchilderPsi>;

  static PsiSpec degenerate(double rho);
  static PsiSpec tabulated(std::vector<double> grid, std::vector<double> values);
  static PsiSpec schilder(Modulation mod, double t, int segments, double gamma_max,
                          int gamma_points);

  const Variant& variant() const { return v_; }

 private:
  explicit PsiSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// Rate function for an unscaled background with attainable interval
// [a_minus, a_plus]:
//   infinity        a < 0
//   ell(a_minus, a) a in [0, a_minus]
//   0               a in [a_minus, a_plus]
//   ell(a_plus, a)  a in [a_plus, infinity)
// and the last branch is absent when a_plus is infinite.
double rate_I_unscaled(const AttainableInterval& interval, double a);

// General regime: inf over gamma with finite psi of ell(gamma; a) +
// psi(gamma). Degenerate psi is exact; tabulated psi takes the grid minimum
// plus a ternary polish on the segments adjacent to the argmin; the
// variational psi is tabulated first (gamma_points overrides the spec's
// resolution when positive).
double rate_I_general(const PsiSpec& psi, double a, int gamma_points = 0);

// Evaluates a variational psi on its gamma grid, yielding a tabulated spec
// (identity on the other variants).
PsiSpec tabulate_psi(const PsiSpec& psi, int gamma_points = 0);

// One evaluable rate function, either regime.
class RateFunctionModel {
 public:
  static RateFunctionModel unscaled(AttainableInterval interval) {
    return RateFunctionModel(std::move(interval));
  }
  static RateFunctionModel general(PsiSpec psi) { return RateFunctionModel(std::move(psi)); }

  double operator()(double a) const {
    if (interval_) return rate_I_unscaled(*interval_, a);
    return rate_I_general(*psi_, a);
  }

 private:
  explicit RateFunctionModel(AttainableInterval iv) : interval_(iv) {}
  explicit RateFunctionModel(PsiSpec psi) : psi_(std::move(psi)) {}
  std::optional<AttainableInterval> interval_;
  std::optional<PsiSpec> psi_;
};

}  // namespace misq
