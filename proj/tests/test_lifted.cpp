#include "mixlab/lifted.hpp"

#include <cmath>

#include <stdexcept>

#include "doctest.h"
#include "mixlab/grid_walks.hpp"
#include "mixlab/spectral.hpp"

using namespace mixlab;

TEST_CASE("dhn kernel structure") {
  SUBCASE("n = 2, hand construction") {
    // reversal defaults to 1/2 at n = 2; states (0,+),(1,+),(0,-),(1,-).
    const Kernel k = dhn_kernel(LiftedSpec{2, 0.0});
    CHECK(k.entry(0, 1) == doctest::Approx(0.5));   // (0,+) -> (1,+), move
    CHECK(k.entry(0, 2) == doctest::Approx(0.25));  // (0,+) -> (0,-), flip
    CHECK(k.entry(0, 0) == doctest::Approx(0.25));  // (0,+) holds
    CHECK(k.entry(1, 3) == doctest::Approx(0.75));  // (1,+) turns around
    CHECK(k.entry(1, 1) == doctest::Approx(0.25));  // (1,+) holds
    CHECK(k.entry(2, 0) == doctest::Approx(0.75));  // (0,-) turns around
    CHECK(k.entry(3, 2) == doctest::Approx(0.5));   // (1,-) -> (0,-), move
    CHECK(k.entry(3, 1) == doctest::Approx(0.25));  // (1,-) -> (1,+), flip
  }
  SUBCASE("column sums are exactly 1 (doubly stochastic)") {
    const Kernel k = dhn_kernel(LiftedSpec{25, 0.0});
    std::vector<double> col(2 * 25, 0.0);
    for (std::size_t i = 0; i < k.size(); ++i) {
      for (const auto& e : k.rows()[i]) col[e.target] += e.prob;
    }
    for (double sum : col) CHECK(std::abs(sum - 1.0) < 1e-12);
  }
  SUBCASE("uniform is stationary on the lifted space") {
    const Kernel k = dhn_kernel(LiftedSpec{100, 0.0});
    CHECK(stationarity_residual(k, Dist::uniform(200)) < 1e-12);
  }
  SUBCASE("never reversible for n >= 3") {
    for (std::size_t n : {3, 8, 21}) {
      const Kernel k = dhn_kernel(LiftedSpec{n, 0.0});
      CHECK(reversibility_residual(k, Dist::uniform(2 * n)) > 1e-6);
      CHECK(stationarity_residual(k, Dist::uniform(2 * n)) < 1e-12);
    }
  }
}

TEST_CASE("position marginal is consistent with lifted evolution") {
  const LiftedSpec spec{12, 0.0};
  const Kernel k = dhn_kernel(spec);
  Dist law = Dist::point_mass(24, 0);
  for (int l = 0; l < 30; ++l) {
    law = k.apply(law);
    const Dist marginal = position_marginal(law);
    CHECK(std::abs(marginal.total_mass() - 1.0) < 1e-12);
  }
  const TVProfile profile = dhn_position_profile(spec, 30);
  CHECK(profile.values[0] == doctest::Approx(1.0 - 1.0 / 12.0));
}

TEST_CASE("lifted walk mixes linearly, path walk quadratically") {
  const auto rows = lifted_vs_diffusive({64, 128});
  for (const auto& row : rows) {
    CHECK(row.tmix_lifted <= 10 * static_cast<std::int64_t>(row.n));
    CHECK(row.tmix_path > row.tmix_lifted);
  }
  const double lifted_ratio =
      static_cast<double>(rows[1].tmix_lifted) / static_cast<double>(rows[0].tmix_lifted);
  const double path_ratio =
      static_cast<double>(rows[1].tmix_path) / static_cast<double>(rows[0].tmix_path);
  CHECK(lifted_ratio > 1.6);
  CHECK(lifted_ratio < 2.4);
  CHECK(path_ratio > 3.4);
  CHECK(path_ratio < 4.6);
}

TEST_CASE("n = 2 mixes immediately") {
  CHECK(*dhn_position_mixing_time(LiftedSpec{2, 0.0}, 0.25, 16) <= 4);
  const auto path_t = find_mixing_time(path_kernel(2), Dist::point_mass(2, 0),
                                       Dist::uniform(2), 0.25, 16);
  CHECK(*path_t <= 2);
}

TEST_CASE("gap curve over theta") {
  const std::vector<double> grid = theta_grid(0.5, 3.0, 0.5);
  REQUIRE(grid.size() == 6);
  const GapCurve curve = gap_vs_theta(64, grid);
  REQUIRE(curve.points.size() == 6);
  for (const auto& point : curve.points) {
    CHECK(point.gap >= 0.0);
    CHECK(point.gap <= 1.0);
  }
  // theta = 1 sits on this grid; the argmax can only beat it.
  const auto at_one = std::find_if(curve.points.begin(), curve.points.end(),
                                   [](const GapPoint& p) { return p.theta == 1.0; });
  REQUIRE(at_one != curve.points.end());
  CHECK(curve.points[curve.argmax].gap >= at_one->gap);
}

TEST_CASE("gap curve is continuous on a fine grid") {
  const GapCurve curve = gap_vs_theta(48, theta_grid(0.2, 3.0, 0.1));
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    CHECK(std::abs(curve.points[i].gap - curve.points[i - 1].gap) < 0.2);
  }
}

TEST_CASE("full reversal freezes the position and kills the gap") {
  const std::size_t n = 16;
  const GapCurve curve = gap_vs_theta(n, {1.0, static_cast<double>(n)});
  CHECK(curve.points[1].gap == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(curve.points[0].gap > curve.points[1].gap);
  CHECK(curve.argmax == 0);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(dhn_kernel(LiftedSpec{1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(dhn_kernel(LiftedSpec{8, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(gap_vs_theta(8, {}), std::invalid_argument);
  CHECK_THROWS_AS(gap_vs_theta(8, {9.0}), std::invalid_argument);  // reversal > 1
}
