#include <doctest.h>

#include <cmath>

#include "misq/hybrid_estimator.hpp"
#include "misq/numerics.hpp"
#include "misq/phi.hpp"
#include "misq/poisson_ldp.hpp"
#include "oracles.hpp"

using namespace misq;

TEST_SUITE_BEGIN("hybrid");

namespace {

BackgroundSpec constant_background() {
  return BackgroundSpec::deterministic(StepPath(StateSpace::finite(1), {0.0}, {0.0}, 10.0));
}

Modulation fixed_gamma_mod() {
  // lambda = 1, kappa = 0: the Poisson mean is exactly t.
  return Modulation(StateSpace::finite(1), RateMap::table({1.0}), RateMap::table({0.0}),
                    RateMap::table({1.0}));
}

}  // namespace

TEST_CASE("zero arrivals make the half-line event impossible") {
  const Modulation mod(StateSpace::finite(1), RateMap::table({0.0}), RateMap::table({1.0}),
                       RateMap::table({1.0}));
  TargetSet F;
  F.lo = 0.5;
  const auto est = hybrid_ldp_estimate(constant_background(), mod, 1.0, 10, F, 100, 5);
  CHECK(est.log_p_hat == -kInf);
  CHECK(std::isinf(est.slope));
  CHECK(est.slope > 0.0);
}

TEST_CASE("deterministic background: exact Poisson tails and the Cramer slope") {
  const auto spec = constant_background();
  const auto mod = fixed_gamma_mod();
  const double gamma = 1.0;
  TargetSet F;
  F.lo = 2.0;

  for (int n : {50, 200, 500}) {
    const auto est = hybrid_ldp_estimate(spec, mod, 1.0, n, F, 1, 99);
    const auto want = static_cast<double>(
        testing::poisson_set_log_prob_ld(n * gamma, static_cast<long long>(std::ceil(n * F.lo)), -1));
    CHECK(std::abs(est.log_p_hat - want) <= 1e-10 * std::abs(want));
    CHECK(est.mean_phi == doctest::Approx(gamma).epsilon(1e-12));
  }
  const auto est500 = hybrid_ldp_estimate(spec, mod, 1.0, 500, F, 1, 99);
  CHECK(std::abs(est500.slope - ell(gamma, 2.0)) <= 0.05);
}

TEST_CASE("interval targets use the exact integer window") {
  const auto spec = constant_background();
  const auto mod = fixed_gamma_mod();
  TargetSet F;
  F.lo = 0.8;
  F.hi = 1.2;
  for (int n : {5, 17, 40}) {
    const auto est = hybrid_ldp_estimate(spec, mod, 1.0, n, F, 3, 1);
    const auto lo = static_cast<long long>(std::ceil(n * F.lo - 1e-9));
    const auto hi = static_cast<long long>(std::floor(n * F.hi + 1e-9));
    const auto want = static_cast<double>(testing::poisson_set_log_prob_ld(n, lo, hi));
    CHECK(std::abs(est.log_p_hat - want) <= 1e-10 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("empty scaled windows underflow to an infinite slope") {
  const auto spec = constant_background();
  const auto mod = fixed_gamma_mod();
  TargetSet F;
  F.lo = 0.5;
  F.hi = 0.6;
  const auto est = hybrid_ldp_estimate(spec, mod, 1.0, 3, F, 10, 1);  // no integers in [1.5, 1.8]
  CHECK(est.log_p_hat == -kInf);
}

TEST_CASE("replica average is reproducible and thread independent") {
  const auto q = GeneratorMatrix(std::vector<std::vector<double>>{{-1.0, 1.0}, {1.0, -1.0}});
  const auto spec = BackgroundSpec::time_scaled_ctmc(q, {1.0, 0.0}, 0.5, 1);
  const Modulation mod(StateSpace::finite(2), RateMap::table({1.0, 2.0}), RateMap::table({1.0, 1.0}),
                       RateMap::table({1.0, 1.0}));
  TargetSet F;
  F.lo = 1.5;
  const auto a = hybrid_ldp_estimate(spec, mod, 1.0, 20, F, 500, 31, 1);
  const auto b = hybrid_ldp_estimate(spec, mod, 1.0, 20, F, 500, 31, 2);
  CHECK(a.log_p_hat == b.log_p_hat);
  CHECK(a.mean_phi == b.mean_phi);
}

TEST_CASE("parameter validation") {
  const auto spec = constant_background();
  const auto mod = fixed_gamma_mod();
  TargetSet F;
  F.lo = 1.0;
  CHECK_THROWS_AS(hybrid_ldp_estimate(spec, mod, 1.0, 0, F, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(hybrid_ldp_estimate(spec, mod, 1.0, 5, F, 0, 1), std::invalid_argument);
  TargetSet bad;
  bad.lo = 2.0;
  bad.hi = 1.0;
  CHECK_THROWS_AS(hybrid_ldp_estimate(spec, mod, 1.0, 5, bad, 10, 1), std::invalid_argument);
}

TEST_SUITE_END();
