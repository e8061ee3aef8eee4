#include <doctest.h>

#include <cmath>

#include "misq/numerics.hpp"
#include "misq/poisson_ldp.hpp"
#include "misq/rate_function.hpp"
#include "misq/rng.hpp"

using namespace misq;

TEST_SUITE_BEGIN("rate_function");

TEST_CASE("unscaled rate function branches") {
  const AttainableInterval iv{1.0, 2.0, false};
  CHECK(rate_I_unscaled(iv, 1.5) == 0.0);
  CHECK(rate_I_unscaled(iv, -0.5) == kInf);
  CHECK(rate_I_unscaled(iv, 3.0) == doctest::Approx(2.0 - 3.0 + 3.0 * std::log(1.5)).epsilon(1e-14));
  CHECK(rate_I_unscaled(iv, 0.0) == doctest::Approx(1.0).epsilon(1e-14));  // ell(a_minus, 0)
  CHECK(rate_I_unscaled(iv, 1.0) == 0.0);
  CHECK(rate_I_unscaled(iv, 2.0) == 0.0);
}

TEST_CASE("unscaled zero set is exactly the interval, tails monotone") {
  const AttainableInterval iv{0.8, 1.7, false};
  for (int i = 0; i <= 200; ++i) {
    const double a = 3.0 * i / 200.0;
    const double v = rate_I_unscaled(iv, a);
    if (a >= iv.a_minus && a <= iv.a_plus) CHECK(v == 0.0);
    else CHECK(v > 0.0);
  }
  double prev = 0.0;
  for (int i = 0; i <= 50; ++i) {  // decreasing toward a_minus from the left
    const double a = iv.a_minus * i / 50.0;
    const double v = rate_I_unscaled(iv, a);
    if (i > 0) CHECK(v <= prev);
    prev = v;
  }
  prev = 0.0;
  for (int i = 0; i <= 50; ++i) {  // increasing away from a_plus on the right
    const double a = iv.a_plus + 2.0 * i / 50.0;
    const double v = rate_I_unscaled(iv, a);
    if (i > 0) CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("unbounded upper end drops the right branch") {
  const AttainableInterval iv{0.9, kInf, true};
  CHECK(rate_I_unscaled(iv, 0.5) == doctest::Approx(ell(0.9, 0.5)));
  CHECK(rate_I_unscaled(iv, 5.0) == 0.0);
  CHECK(rate_I_unscaled(iv, 1e9) == 0.0);
}

TEST_CASE("degenerate psi is the plain Poisson transform") {
  const double rho = 0.9481808382428365;
  const auto psi = PsiSpec::degenerate(rho);
  CHECK(rate_I_general(psi, rho) == 0.0);
  for (double a : {0.0, 0.3, 0.95, 1.5, 4.0})
    CHECK(rate_I_general(psi, a) == doctest::Approx(ell(rho, a)).epsilon(1e-15));
}

TEST_CASE("tabulated flat psi reproduces the unscaled rate function") {
  std::vector<double> grid, values;
  for (int i = 0; i <= 100; ++i) {
    grid.push_back(1.0 + i / 100.0);
    values.push_back(0.0);
  }
  const auto psi = PsiSpec::tabulated(grid, values);
  const AttainableInterval iv{1.0, 2.0, false};
  CHECK(std::abs(rate_I_general(psi, 3.0) - rate_I_unscaled(iv, 3.0)) <= 1e-9);
  for (double a : {0.0, 0.5, 1.0, 1.3, 2.0, 2.5, 6.0})
    CHECK(std::abs(rate_I_general(psi, a) - rate_I_unscaled(iv, a)) <= 1e-9);
}

TEST_CASE("disconnected attainable set: two flat pieces with a gap") {
  // psi = 0 on [1, 2] and [3, 3.5], infinite elsewhere.
  std::vector<double> grid, values;
  const auto add_piece = [&](double lo, double hi, int steps) {
    for (int i = 0; i <= steps; ++i) {
      grid.push_back(lo + (hi - lo) * i / steps);
      values.push_back(0.0);
    }
  };
  add_piece(1.0, 2.0, 50);
  // one infinite point marks the gap
  grid.push_back(2.5);
  values.push_back(kInf);
  add_piece(3.0, 3.5, 25);
  const auto psi = PsiSpec::tabulated(grid, values);

  for (double a : {1.0, 1.25, 1.7, 2.0, 3.0, 3.2, 3.5})
    CHECK(rate_I_general(psi, a) <= 1e-6);
  for (int i = 1; i < 40; ++i) {
    const double a = 2.0 + 1.0 * i / 40.0;
    const double want = std::min(ell(2.0, a), ell(3.0, a));
    CHECK(std::abs(rate_I_general(psi, a) - want) <= 1e-6);
  }
  for (double a : {0.2, 0.6, 0.9})
    CHECK(std::abs(rate_I_general(psi, a) - ell(1.0, a)) <= 1e-6);
  for (double a : {3.8, 4.5, 6.0})
    CHECK(std::abs(rate_I_general(psi, a) - ell(3.5, a)) <= 1e-6);
}

TEST_CASE("rate function model dispatches by regime") {
  const auto unscaled = RateFunctionModel::unscaled({1.0, 2.0, false});
  const auto general = RateFunctionModel::general(PsiSpec::degenerate(1.5));
  for (double a : {-0.5, 0.0, 1.2, 1.5, 3.0}) {
    CHECK(unscaled(a) == rate_I_unscaled({1.0, 2.0, false}, a));
    CHECK(general(a) == ell(1.5, a));
  }
}

TEST_CASE("psi spec validation") {
  CHECK_THROWS_AS(PsiSpec::tabulated({1.0, 0.5}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(PsiSpec::tabulated({1.0, 2.0}, {kInf, kInf}), std::invalid_argument);
  CHECK_THROWS_AS(PsiSpec::tabulated({1.0}, {-0.5}), std::invalid_argument);
  CHECK_THROWS_AS(PsiSpec::degenerate(-1.0), std::invalid_argument);
}

TEST_CASE("half-line transform envelope is continuous in gamma") {
  // f(gamma) = -inf_{a >= a0} ell(gamma; a) = -ell(gamma, a0) for gamma < a0,
  // 0 afterwards. The grid modulus must shrink linearly with the grid.
  const double a0 = 1.3;
  const auto f = [&](double g) { return g >= a0 ? 0.0 : -ell(g, a0); };
  double prev_modulus = kInf;
  for (int n : {200, 400, 800}) {
    double modulus = 0.0;
    for (int i = 0; i < n; ++i) {
      const double g1 = 0.05 + (3.0 - 0.05) * i / n;
      const double g2 = 0.05 + (3.0 - 0.05) * (i + 1) / n;
      modulus = std::max(modulus, std::abs(f(g2) - f(g1)));
    }
    CHECK(modulus < prev_modulus);
    prev_modulus = modulus;
    // Lipschitz bound on [0.05, 3]: |df/dgamma| = |1 - a0/gamma| <= a0/0.05.
    CHECK(modulus <= (a0 / 0.05) * (3.0 / n) * 1.01);
  }
}

TEST_CASE("restricted infimum of the averaged Poisson ball probability") {
  // For n i.i.d. Poisson(gamma) terms, the infimum of
  // P(mean in B(x, delta)) over gamma in the positive ball around lambda is
  // attained inside B(lambda, eps) ∩ cl B(x, delta) or at the clipped
  // endpoints.
  RngStream rng(414);
  const double res = 1e-3;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform() * 6.0);
    const double x = 0.3 + 2.7 * rng.uniform();
    const double delta = 0.61 + 0.59 * rng.uniform();
    const double lambda = 3.0 * rng.uniform();
    const double eps = 0.3 + 1.2 * rng.uniform();
    const double lo = std::max(0.0, lambda - eps), hi = lambda + eps;

    // Exact probability of the open ball for the scaled sum.
    const auto prob = [&](double gamma) {
      double p = 0.0;
      const double lo_k = n * (x - delta), hi_k = n * (x + delta);
      for (long long k = std::max<long long>(0, static_cast<long long>(std::floor(lo_k)));
           k <= static_cast<long long>(std::ceil(hi_k)); ++k) {
        const double kd = static_cast<double>(k);
        if (kd > lo_k && kd < hi_k) p += std::exp(log_poisson_pmf(k, n * gamma));
      }
      return p;
    };

    double best_gamma = lo, best = kInf;
    const int steps = static_cast<int>(std::ceil((hi - lo) / res));
    for (int i = 0; i <= steps; ++i) {
      const double gamma = std::min(hi, lo + res * i);
      const double p = prob(gamma);
      if (p < best) {
        best = p;
        best_gamma = gamma;
      }
    }

    const bool at_edges = std::abs(best_gamma - lo) <= res + 1e-9 || std::abs(best_gamma - hi) <= res + 1e-9;
    const bool in_intersection = best_gamma > lambda - eps - res && best_gamma < lambda + eps + res &&
                                 best_gamma >= x - delta - res - 1e-9 && best_gamma <= x + delta + res + 1e-9;
    CHECK((at_edges || in_intersection));
  }
}

TEST_SUITE_END();
