#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

namespace misq {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// (1 - e^{-z}) / z, continuously extended to 1 at z = 0. The expm1 form is
// stable for small z; the z = 0 branch is exact, not a tolerance.
inline double em1(double z) {
  if (z == 0.0) return 1.0;
  return -std::expm1(-z) / z;
}

// log(sum exp(x_i)) with the max factored out; -inf entries drop out.
inline double log_sum_exp(std::span<const double> xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;  // all -inf (or a +inf slipped in)
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

// Regularized incomplete gamma functions P(s,x) and Q(s,x) = 1 - P(s,x),
// series expansion below s+1 and Lentz continued fraction above.
double lower_reg_gamma(double s, double x);
double upper_reg_gamma(double s, double x);

// Survival function of the chi-square distribution with `dof` degrees.
inline double chi_square_sf(double x, int dof) {
  if (dof < 1) throw std::invalid_argument("chi_square_sf: dof must be >= 1");
  if (x <= 0.0) return 1.0;
  return upper_reg_gamma(0.5 * dof, 0.5 * x);
}

}  // namespace misq
