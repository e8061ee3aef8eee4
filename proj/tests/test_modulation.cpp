#include <doctest.h>

#include <cmath>

#include "misq/numerics.hpp"
#include "misq/phi.hpp"
#include "oracles.hpp"

using namespace misq;

TEST_SUITE_BEGIN("modulation");

namespace {

Modulation table_mod(std::vector<double> lam, std::vector<double> kap, std::vector<double> mu) {
  const int d = static_cast<int>(lam.size());
  return Modulation(StateSpace::finite(d), RateMap::table(std::move(lam)),
                    RateMap::table(std::move(kap)), RateMap::table(std::move(mu)));
}

}  // namespace

TEST_CASE("rate map validation") {
  CHECK_THROWS_AS(RateMap::table({1.0, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(RateMap::constant(-1.0), std::invalid_argument);

  const auto unit = StateSpace::interval(0.0, 1.0);
  CHECK_NOTHROW(Modulation(unit, RateMap::identity(), RateMap::constant(1.0), RateMap::one_minus()));
  // Negative at the left endpoint.
  CHECK_THROWS_AS(Modulation(unit, RateMap::affine(-0.5, 1.0), RateMap::constant(1.0), RateMap::constant(1.0)),
                  std::invalid_argument);
  // one_minus is negative above 1.
  CHECK_THROWS_AS(Modulation(StateSpace::interval(0.0, 2.0), RateMap::one_minus(), RateMap::constant(1.0),
                             RateMap::constant(1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Modulation(StateSpace::nonneg_int(), RateMap::one_minus(), RateMap::constant(1.0),
                             RateMap::constant(1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Modulation(StateSpace::nonneg_int(), RateMap::affine(1.0, -0.5), RateMap::constant(1.0),
                             RateMap::constant(1.0)),
                  std::invalid_argument);
  // Table maps need the matching finite space.
  CHECK_THROWS_AS(Modulation(StateSpace::finite(3), RateMap::table({1.0, 2.0}), RateMap::constant(1.0),
                             RateMap::constant(1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Modulation(StateSpace::real_line(), RateMap::table({1.0}), RateMap::constant(1.0),
                             RateMap::constant(1.0)),
                  std::invalid_argument);
}

TEST_CASE("rate maps clamp at zero on the real line") {
  const Modulation mod(StateSpace::real_line(), RateMap::identity(), RateMap::constant(1.0),
                       RateMap::affine(1.0, 2.0));
  CHECK(mod.lambda(-3.0) == 0.0);
  CHECK(mod.lambda(2.0) == 2.0);
  CHECK(mod.mu(-1.0) == 0.0);
}

TEST_CASE("phi single constant segment matches the closed form") {
  const auto mod = table_mod({1.0}, {1.0}, {1.0});
  const StepPath p(StateSpace::finite(1), {0.0}, {0.0}, 2.0);
  CHECK(std::abs(phi(p, mod, 1.0) - (-std::expm1(-1.0))) <= 1e-12);
}

TEST_CASE("phi with zero work rate reduces to the arrival integral") {
  const auto mod = table_mod({3.0, 3.0}, {1.0, 2.0}, {0.0, 0.0});
  const StepPath p(StateSpace::finite(2), {0.0, 0.4}, {0.0, 1.0}, 2.0);
  CHECK(phi(p, mod, 1.5) == doctest::Approx(3.0 * 1.5).epsilon(1e-14));
}

TEST_CASE("phi two-segment example matches adaptive quadrature") {
  const auto mod = table_mod({1.0, 2.0}, {1.0, 1.0}, {2.0, 1.0});
  const StepPath p(StateSpace::finite(2), {0.0, 0.5}, {0.0, 1.0}, 1.0);
  const double exact = phi(p, mod, 1.0);
  const double quad = testing::phi_quadrature(p, mod, 1.0);
  CHECK(std::abs(exact - quad) <= 1e-9 * std::abs(quad));
}

TEST_CASE("phi matches quadrature on random step paths") {
  RngStream rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform() * 3.0);
    std::vector<double> lam(static_cast<std::size_t>(d)), kap(lam), mu(lam);
    for (int j = 0; j < d; ++j) {
      lam[static_cast<std::size_t>(j)] = 5.0 * rng.uniform();
      kap[static_cast<std::size_t>(j)] = 5.0 * rng.uniform();
      mu[static_cast<std::size_t>(j)] = 5.0 * rng.uniform();
    }
    const auto mod = table_mod(lam, kap, mu);
    const int segments = 1 + static_cast<int>(rng.uniform() * 10.0);
    const StepPath p = testing::random_finite_step_path(d, segments, 1.5, rng);
    const double t = 0.5 + rng.uniform();
    const double exact = phi(p, mod, t);
    const double quad = testing::phi_quadrature(p, mod, t);
    CHECK(std::abs(exact - quad) <= 1e-9 * std::max(std::abs(quad), 1e-6));
  }
}

TEST_CASE("phi is exactly linear in lambda") {
  RngStream rng(404);
  const StepPath p = testing::random_finite_step_path(3, 6, 1.0, rng);
  const std::vector<double> kap{0.5, 1.0, 2.0}, mu{1.0, 0.3, 2.0};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> lam{rng.uniform(), rng.uniform(), rng.uniform()};
    const double c = 0.1 + 5.0 * rng.uniform();
    std::vector<double> lam_scaled(lam);
    for (auto& v : lam_scaled) v *= c;
    const double base = phi(p, table_mod(lam, kap, mu), 1.0);
    const double scaled = phi(p, table_mod(lam_scaled, kap, mu), 1.0);
    CHECK(scaled == doctest::Approx(c * base).epsilon(1e-14));
  }
}

TEST_CASE("phi vanishes at t = 0") {
  RngStream rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const StepPath p = testing::random_finite_step_path(3, 5, 1.0, rng);
    const auto mod = table_mod({1.0, 2.0, 0.5}, {1.0, 0.0, 2.0}, {2.0, 1.0, 0.0});
    CHECK(phi(p, mod, 0.0) == 0.0);
  }
}

TEST_CASE("phi is continuous in the path (perturbation sequence)") {
  const auto unit = StateSpace::interval(0.0, 1.0);
  const Modulation mod(unit, RateMap::affine(0.1, 0.8), RateMap::constant(1.0), RateMap::one_minus());
  const StepPath base(unit, {0.0, 0.3, 0.7}, {0.3, 0.6, 0.4}, 1.0);
  const double phi_base = phi(base, mod, 1.0);
  double prev_gap = kInf;
  for (double eps : {0.1, 0.01, 0.001}) {
    const StepPath shifted(unit, {0.0, 0.3, 0.7}, {0.3 + eps, 0.6 + eps, 0.4 + eps}, 1.0);
    CHECK(sup_distance(base, shifted, 1.0) == doctest::Approx(eps).epsilon(1e-12));
    const double gap = std::abs(phi(shifted, mod, 1.0) - phi_base);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap <= 0.01);  // and the gaps actually shrink toward 0
}

TEST_CASE("phi rejects bad horizons and spaces") {
  const auto mod = table_mod({1.0}, {1.0}, {1.0});
  const StepPath p(StateSpace::finite(1), {0.0}, {0.0}, 1.0);
  CHECK_THROWS_AS(phi(p, mod, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(phi(p, mod, -0.5), std::invalid_argument);
  const auto mod2 = table_mod({1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0});
  CHECK_THROWS_AS(phi(p, mod2, 0.5), std::invalid_argument);
}

TEST_CASE("phi profile agrees with pointwise phi") {
  RngStream rng(11);
  const StepPath p = testing::random_finite_step_path(3, 6, 2.0, rng);
  const auto mod = table_mod({1.0, 2.0, 0.3}, {0.5, 1.0, 0.0}, {1.0, 0.2, 2.0});
  const std::vector<double> grid{0.0, 0.25, 0.5, 1.0, 1.5, 2.0};
  const auto prof = phi_profile(p, mod, grid);
  REQUIRE(prof.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(prof[i] == phi(p, mod, grid[i]));
  CHECK_THROWS_AS(phi_profile(p, mod, std::vector<double>{0.5, 2.5}), std::invalid_argument);
}

TEST_SUITE_END();
