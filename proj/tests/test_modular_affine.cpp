#include "mixlab/modular_affine.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

#include <stdexcept>

#include "doctest.h"
#include "mixlab/kernel.hpp"

using namespace mixlab;

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(AffineWalkSpec::doubling(4), std::invalid_argument);   // even
  CHECK_THROWS_AS(AffineWalkSpec::doubling(1), std::invalid_argument);   // too small
  CHECK_THROWS_AS(AffineWalkSpec::random_multiplier(9, {3}), std::invalid_argument);
  CHECK(mod_inverse(2, 7) == 4);
  CHECK(mod_inverse(5, 9) == 2);
  CHECK_THROWS_AS(mod_inverse(3, 9), std::invalid_argument);
}

TEST_CASE("affine evolution, small cases") {
  SUBCASE("zero steps is a point mass at 0") {
    const Dist law = affine_evolve(AffineWalkSpec::doubling(7), 0);
    CHECK(law[0] == 1.0);
  }
  SUBCASE("p=3 doubling is uniform after one step") {
    const Dist law = affine_evolve(AffineWalkSpec::doubling(3), 1);
    for (std::size_t j = 0; j < 3; ++j) CHECK(law[j] == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("p=5 plain walk after two steps matches path enumeration") {
    // Oracle: enumerate the 9 increment pairs directly.
    double expected[5] = {0, 0, 0, 0, 0};
    for (int e1 : {0, 1, -1}) {
      for (int e2 : {0, 1, -1}) {
        expected[(((e1 + e2) % 5) + 5) % 5] += 1.0 / 9.0;
      }
    }
    const Dist law = affine_evolve(AffineWalkSpec::plain(5), 2);
    for (std::size_t j = 0; j < 5; ++j) CHECK(law[j] == doctest::Approx(expected[j]));
  }
}

TEST_CASE("uniform is stationary for every multiplier rule") {
  for (auto spec : {AffineWalkSpec::doubling(11), AffineWalkSpec::plain(11),
                    AffineWalkSpec::random_multiplier(11, {2, mod_inverse(2, 11)})}) {
    const Kernel k = affine_kernel(spec);
    CHECK(stationarity_residual(k, Dist::uniform(11)) < 1e-12);
  }
}

TEST_CASE("pullback law equals dense kernel evolution") {
  for (std::int64_t p : {5, 31, 101}) {
    const auto spec = AffineWalkSpec::random_multiplier(p, {2, mod_inverse(2, p)});
    const Kernel k = affine_kernel(spec);
    const Dist start = Dist::point_mass(static_cast<std::size_t>(p), 0);
    for (int steps : {0, 1, 5, 20}) {
      const Dist by_update = affine_evolve(spec, steps);
      const Dist by_kernel = evolve(k, start, steps);
      CHECK(tv_distance(by_update, by_kernel) < 1e-13);
    }
  }
}

TEST_CASE("doubling constant") {
  CHECK(cdg_constant() == doctest::Approx(1.01999186).epsilon(1e-8));
  const double ratio = (5.0 + std::sqrt(17.0)) / 9.0;
  CHECK(ratio > 1.0);  // the log2 below is positive but less than 1
  CHECK(ratio < 2.0);
  CHECK(std::log2(ratio) > 0.0);
  CHECK(std::log2(ratio) < 1.0);
  CHECK(cdg_constant() > 1.0);

  // High-precision recomputation oracle.
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big big_ratio = (Big(5) + sqrt(Big(17))) / 9;
  const Big big_c = 1 / (1 - log(big_ratio) / log(Big(2)));
  CHECK(std::abs(cdg_constant() - big_c.convert_to<double>()) < 1e-12);
}

TEST_CASE("doubling walk profile is non-increasing") {
  const TVProfile profile = affine_tv_profile(AffineWalkSpec::doubling(101), 40);
  for (std::size_t i = 1; i < profile.values.size(); ++i) {
    CHECK(profile.values[i] <= profile.values[i - 1] + 1e-12);
  }
}

TEST_CASE("speedup experiment on a few fixed moduli") {
  const auto rows = doubling_speedup_experiment({1003, 4097, 9999}, 1.3);
  for (const auto& row : rows) {
    CHECK(row.steps ==
          static_cast<std::int64_t>(std::ceil(1.3 * std::log2(static_cast<double>(row.p)))));
    CHECK(row.tv_plain > 0.9);  // the plain walk has barely spread at log-scale steps
    CHECK(row.tv_doubling < row.tv_plain);
  }
  CHECK(doubling_pass_fraction(rows, 0.3) == doctest::Approx(1.0));
  CHECK(rows.size() == 3);
}

TEST_CASE("p=3 is uniform at the theorem step count") {
  const auto rows = doubling_speedup_experiment_eps({3}, 0.3);
  CHECK(rows[0].tv_doubling < 1e-12);
}

TEST_CASE("random-multiplier variants") {
  SUBCASE("degenerate multiplier set reproduces the doubling walk") {
    const Dist a = affine_evolve(AffineWalkSpec::random_multiplier(101, {2}), 25);
    const Dist b = affine_evolve(AffineWalkSpec::doubling(101), 25);
    CHECK(tv_distance(a, b) == 0.0);
  }
  SUBCASE("2 or 1/2 mixes in order log p") {
    const std::int64_t p = 9973;
    const auto spec = AffineWalkSpec::random_multiplier(p, {2, mod_inverse(2, p)});
    const double bound = 10.0 * std::log2(static_cast<double>(p));
    const TVProfile profile = affine_tv_profile(spec, static_cast<std::int64_t>(bound));
    CHECK(mixing_time(profile, 0.25).has_value());
  }
  SUBCASE("multiplier 1 alone is diffusive") {
    const std::int64_t p = 401;
    const TVProfile profile = affine_tv_profile(AffineWalkSpec::plain(p), p);
    CHECK(!mixing_time(profile, 0.25).has_value());  // t_mix(1/4) > p
  }
}

TEST_CASE("quenched run with a fixed seed is deterministic") {
  const auto spec = AffineWalkSpec::random_multiplier(101, {2, mod_inverse(2, 101)});
  const Dist a = affine_evolve_quenched(spec, 30, 42);
  const Dist b = affine_evolve_quenched(spec, 30, 42);
  CHECK(tv_distance(a, b) == 0.0);
  CHECK(std::abs(a.total_mass() - 1.0) < 1e-12);
}
