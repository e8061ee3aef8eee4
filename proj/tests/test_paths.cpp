#include <doctest.h>

#include <cmath>
#include <sstream>

#include "misq/step_path.hpp"
#include "oracles.hpp"

using namespace misq;

TEST_SUITE_BEGIN("paths");

namespace {

StepPath make_finite(std::vector<double> ts, std::vector<double> xs, double horizon, int d = 3) {
  return StepPath(StateSpace::finite(d), std::move(ts), std::move(xs), horizon);
}

}  // namespace

TEST_CASE("minimal representation merges equal adjacent states") {
  const StepPath p = make_finite({0.0, 1.0, 2.0}, {0.0, 0.0, 1.0}, 3.0);
  const StepPath m = p.minimal_representation();
  CHECK(m.times() == std::vector<double>{0.0, 2.0});
  CHECK(m.states() == std::vector<double>{0.0, 1.0});

  const StepPath single = make_finite({0.0}, {0.0}, 1.0).minimal_representation();
  CHECK(single.times() == std::vector<double>{0.0});

  const StepPath p2 = make_finite({0.0, 1.0, 1.5, 2.0}, {0.0, 1.0, 1.0, 0.0}, 2.5);
  const StepPath m2 = p2.minimal_representation();
  CHECK(m2.times() == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(m2.states() == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("minimal representation is idempotent and preserves evaluation") {
  RngStream rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const StepPath p = testing::random_finite_step_path(3, 8, 2.0, rng);
    const StepPath m = p.minimal_representation();
    const StepPath mm = m.minimal_representation();
    CHECK(m.times() == mm.times());
    CHECK(m.states() == mm.states());
    for (int i = 0; i < 1000; ++i) {
      const double s = rng.uniform() * p.horizon();
      CHECK(p.value_at(s) == m.value_at(s));
    }
  }
}

TEST_CASE("truncated minimal step size") {
  CHECK(truncated_min_step(make_finite({0.0}, {0.0}, 1.0)) == 1.0);
  CHECK(truncated_min_step(make_finite({0.0, 0.3, 0.7}, {0.0, 1.0, 0.0}, 1.0)) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(truncated_min_step(make_finite({0.0, 2.0}, {0.0, 1.0}, 2.0)) == 1.0);
}

TEST_CASE("sup distance examples") {
  const auto unit = StateSpace::interval(0.0, 1.0);
  const StepPath a(unit, {0.0}, {0.2}, 1.0);
  const StepPath b(unit, {0.0}, {0.5}, 1.0);
  CHECK(sup_distance(a, a, 1.0) == 0.0);
  CHECK(sup_distance(a, b, 1.0) == doctest::Approx(0.3).epsilon(1e-15));

  const StepPath c(unit, {0.0, 0.5}, {0.0, 1.0}, 1.0);
  const StepPath zero(unit, {0.0}, {0.0}, 1.0);
  CHECK(sup_distance(c, zero, 1.0) == 1.0);
}

TEST_CASE("sup distance rejects incompatible spaces and short horizons") {
  const StepPath a(StateSpace::interval(0.0, 1.0), {0.0}, {0.2}, 1.0);
  const StepPath b(StateSpace::real_line(), {0.0}, {0.2}, 1.0);
  CHECK_THROWS_AS(sup_distance(a, b, 1.0), std::invalid_argument);
  const StepPath short_path(StateSpace::interval(0.0, 1.0), {0.0}, {0.2}, 0.5);
  CHECK_THROWS_AS(sup_distance(a, short_path, 1.0), std::invalid_argument);
}

TEST_CASE("sup distance is a pseudometric on random triples") {
  RngStream rng(77);
  const auto unit = StateSpace::interval(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    StepPath paths[] = {
        StepPath(unit, {0.0, 0.2 + 0.5 * rng.uniform()}, {rng.uniform(), rng.uniform()}, 1.0),
        StepPath(unit, {0.0, 0.2 + 0.5 * rng.uniform()}, {rng.uniform(), rng.uniform()}, 1.0),
        StepPath(unit, {0.0, 0.2 + 0.5 * rng.uniform()}, {rng.uniform(), rng.uniform()}, 1.0)};
    const double dab = sup_distance(paths[0], paths[1], 1.0);
    const double dba = sup_distance(paths[1], paths[0], 1.0);
    const double dac = sup_distance(paths[0], paths[2], 1.0);
    const double dcb = sup_distance(paths[2], paths[1], 1.0);
    CHECK(dab == dba);
    CHECK(dab <= dac + dcb + 1e-15);
  }
}

TEST_CASE("grid discretization tracks Lipschitz piecewise-linear paths") {
  RngStream rng(31);
  const auto unit = StateSpace::interval(0.0, 1.0);
  for (double eps : {0.1, 0.01}) {
    for (int trial = 0; trial < 10; ++trial) {
      // Continuous piecewise-linear path with |slope| <= 1 staying in [0, 1].
      const int nodes = 6;
      std::vector<double> nt(nodes), ny(nodes);
      double y = 0.3 + 0.4 * rng.uniform();
      for (int i = 0; i < nodes; ++i) {
        nt[static_cast<std::size_t>(i)] = static_cast<double>(i) / (nodes - 1);
        ny[static_cast<std::size_t>(i)] = y;
        const double step = (rng.uniform() - 0.5) * 2.0 / (nodes - 1);
        y = std::clamp(y + step, 0.0, 1.0);
      }
      const auto grid_count = static_cast<std::size_t>(std::ceil(1.0 / eps));
      std::vector<double> gt(grid_count), gv(grid_count);
      for (std::size_t i = 0; i < grid_count; ++i) {
        gt[i] = static_cast<double>(i) * eps;
        double s = gt[i];
        const auto it = std::upper_bound(nt.begin(), nt.end(), s);
        const auto j = static_cast<std::size_t>(it - nt.begin());
        const double w = j >= nt.size() ? 1.0 : (s - nt[j - 1]) / (nt[j] - nt[j - 1]);
        gv[i] = j >= nt.size() ? ny.back() : (1.0 - w) * ny[j - 1] + w * ny[j];
      }
      const StepPath step = discretize(unit, gt, gv, 1.0);
      CHECK(testing::sup_dist_step_vs_pwlinear(step, nt, ny, 1.0) <= eps + 1e-12);
    }
  }
}

TEST_CASE("construction rejects invalid breakpoints") {
  const auto d3 = StateSpace::finite(3);
  CHECK_THROWS_AS(StepPath(d3, {}, {}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(StepPath(d3, {0.5}, {0.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(StepPath(d3, {0.0, 1.0, 1.0}, {0.0, 1.0, 2.0}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(StepPath(d3, {0.0, 1.0}, {0.0, 3.0}, 2.0), std::invalid_argument);  // state out of space
  CHECK_THROWS_AS(StepPath(d3, {0.0, 1.0}, {0.0, 1.0}, 0.5), std::invalid_argument);  // horizon < last time
  CHECK_THROWS_AS(StepPath(StateSpace::interval(0.0, 1.0), {0.0}, {1.5}, 1.0), std::invalid_argument);
}

TEST_CASE("evaluation respects right-continuity and the horizon") {
  const StepPath p = make_finite({0.0, 1.0}, {0.0, 2.0}, 3.0);
  CHECK(p.value_at(0.0) == 0.0);
  CHECK(p.value_at(1.0) == 2.0);  // right-continuous at the jump
  CHECK(p.value_at(0.999999) == 0.0);
  CHECK(p.value_at(3.0) == 2.0);
  CHECK_THROWS_AS(p.value_at(3.0000001), std::out_of_range);
  CHECK_THROWS_AS(p.value_at(-0.1), std::out_of_range);
}

TEST_CASE("restriction drops late breakpoints") {
  const StepPath p = make_finite({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}, 3.0);
  const StepPath r = p.restricted(1.5);
  CHECK(r.horizon() == 1.5);
  CHECK(r.times() == std::vector<double>{0.0, 1.0});
  CHECK_THROWS_AS(p.restricted(4.0), std::invalid_argument);
}

TEST_CASE("csv round trip is exact") {
  RngStream rng(5);
  const StepPath p = testing::random_finite_step_path(3, 6, 1.7320508075688772, rng);
  const std::string csv = to_csv(p);
  std::istringstream in(csv);
  const StepPath q = read_csv(StateSpace::finite(3), in);
  CHECK(q.horizon() == p.horizon());
  CHECK(q.times() == p.times());
  CHECK(q.states() == p.states());
}

TEST_CASE("csv reader reports malformed input") {
  const auto d2 = StateSpace::finite(2);
  std::istringstream no_horizon("time,state\n0,0\n");
  CHECK_THROWS_AS(read_csv(d2, no_horizon), std::invalid_argument);
  std::istringstream bad_header("# horizon=1\nt,s\n0,0\n");
  CHECK_THROWS_AS(read_csv(d2, bad_header), std::invalid_argument);
  std::istringstream bad_row("# horizon=1\ntime,state\n0;0\n");
  CHECK_THROWS_AS(read_csv(d2, bad_row), std::invalid_argument);
}

TEST_CASE("discretize rejects empty samples") {
  CHECK_THROWS_AS(discretize(StateSpace::real_line(), {}, {}, 1.0), std::invalid_argument);
}

TEST_SUITE_END();
