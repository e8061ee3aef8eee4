#pragma once

#include <vector>

#include "misq/rate_map.hpp"

namespace misq {

// Conservative generator of an irreducible finite-state Markov chain:
// nonnegative off-diagonal rates, zero row sums (tolerance 1e-12), and
// strong connectivity of the positive-rate graph, all checked on
// construction.
class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(std::vector<std::vector<double>> rows);

  int dimension() const { return d_; }
  double rate(int i, int j) const { return q_[static_cast<std::size_t>(i * d_ + j)]; }
  double exit_rate(int i) const { return -rate(i, i); }

  GeneratorMatrix scaled(double factor) const;

 private:
  int d_;
  std::vector<double> q_;
};

// Solves pi Q = 0, sum pi = 1; verifies the residual is <= 1e-10 and every
// entry is strictly positive (both fail only if a non-irreducible Q slipped
// through validation).
std::vector<double> stationary_distribution(const GeneratorMatrix& q);

// Long-run mean of the job count under a fast background chain:
//   rho_t = sum_j pi_j lambda_j t em1(kappa_j mu_inf t),  mu_inf = sum_j pi_j mu_j,
// with the kappa_j mu_inf = 0 branch equal to lambda_j t. Rate maps must be
// tables over the same finite space as Q.
double rho_t(const GeneratorMatrix& q, const Modulation& mod, double t);

}  // namespace misq
