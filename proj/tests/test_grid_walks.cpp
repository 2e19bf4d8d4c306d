#include "mixlab/grid_walks.hpp"

#include <cmath>

#include <stdexcept>

#include "doctest.h"
#include "mixlab/spectral.hpp"

using namespace mixlab;

TEST_CASE("path kernel construction") {
  const Kernel k2 = path_kernel(2);
  CHECK(k2.entry(0, 0) == doctest::Approx(0.5));
  CHECK(k2.entry(0, 1) == doctest::Approx(0.5));
  CHECK(k2.entry(1, 0) == doctest::Approx(0.5));
  CHECK(k2.entry(1, 1) == doctest::Approx(0.5));

  const Kernel k = path_kernel(17);
  CHECK(stationarity_residual(k, Dist::uniform(17)) < 1e-12);
  CHECK(is_reversible(k, Dist::uniform(17)));
  CHECK_THROWS_AS(path_kernel(1), std::invalid_argument);
}

TEST_CASE("path walk diffusive scaling") {
  auto tmix = [](std::size_t n) {
    return *find_mixing_time(path_kernel(n), Dist::point_mass(n, 0), Dist::uniform(n), 0.25,
                             static_cast<std::int64_t>(20 * n * n));
  };
  const double t16 = static_cast<double>(tmix(16));
  const double t32 = static_cast<double>(tmix(32));
  const double t64 = static_cast<double>(tmix(64));
  const double t128 = static_cast<double>(tmix(128));
  CHECK(t32 / t16 > 3.4);
  CHECK(t32 / t16 < 4.6);
  CHECK(t64 / t32 > 3.4);
  CHECK(t64 / t32 < 4.6);
  CHECK(t128 / t64 > 3.4);
  CHECK(t128 / t64 < 4.6);
}

TEST_CASE("path walk subdominant eigenvalue approaches 1") {
  double previous = 0.0;
  for (std::size_t n : {4, 8, 16, 32}) {
    const auto s = spectral_decomposition(path_kernel(n), Dist::uniform(n));
    CHECK(s.eigenvalues[1] > previous);
    previous = s.eigenvalues[1];
  }
  CHECK(previous < 1.0);
}

TEST_CASE("lattice region validation") {
  CHECK_THROWS_AS(LatticeRegion(1, {{0}, {0}}), std::invalid_argument);          // duplicate
  CHECK_THROWS_AS(LatticeRegion(1, {{0}, {2}}), std::invalid_argument);          // disconnected
  CHECK_THROWS_AS(LatticeRegion(2, {{0}, {1}}), std::invalid_argument);          // bad dims
  const LatticeRegion seg = LatticeRegion::segment(5);
  CHECK(seg.size() == 5);
  CHECK(seg.index_of({3}) >= 0);
  CHECK(seg.index_of({9}) == -1);
}

TEST_CASE("1-d lattice walk equals the path walk") {
  const Kernel lattice = lattice_kernel(LatticeRegion::segment(9));
  const Kernel path = path_kernel(9);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      CHECK(lattice.entry(i, j) == doctest::Approx(path.entry(i, j)));
    }
  }
  CHECK(is_stationary(lattice, Dist::uniform(9)));
}

TEST_CASE("square lattice walk") {
  const LatticeRegion square = LatticeRegion::from_predicate(
      2, {0, 0}, {4, 4}, [](const LatticeRegion::Point&) { return true; });
  CHECK(square.size() == 25);
  const Kernel k = lattice_kernel(square);
  for (const auto& row : k.rows()) {
    double sum = 0.0;
    for (const auto& e : row) sum += e.prob;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(stationarity_residual(k, Dist::uniform(25)) < 1e-12);
}

TEST_CASE("disc scaling in the squared radius") {
  auto tmix = [](double radius) {
    const LatticeRegion disc = LatticeRegion::disc(radius);
    const Kernel k = lattice_kernel(disc);
    const auto start = static_cast<std::size_t>(
        disc.index_of({static_cast<int>(radius), 0}));
    return static_cast<double>(*find_mixing_time(
        k, Dist::point_mass(disc.size(), start), Dist::uniform(disc.size()), 0.25, 100000));
  };
  const double ratio = tmix(8.0) / tmix(4.0);
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("table space enumeration") {
  SUBCASE("unit margins give the two permutation tables") {
    const TableSpace ts = table_space({1, 1}, {1, 1});
    CHECK(ts.size() == 2);
    const Kernel k = table_kernel(ts);
    // From either table: one of the two sign patterns applies, the other holds.
    CHECK(k.entry(0, 1) == doctest::Approx(0.5));
    CHECK(k.entry(0, 0) == doctest::Approx(0.5));
    CHECK(k.entry(1, 0) == doctest::Approx(0.5));
  }
  SUBCASE("2,2 margins") {
    const TableSpace ts = table_space({2, 2}, {2, 2});
    CHECK(ts.size() == 3);
    CHECK(stationarity_residual(table_kernel(ts), Dist::uniform(3)) < 1e-12);
  }
  SUBCASE("margins must balance") {
    CHECK_THROWS_AS(table_space({2, 2}, {3, 2}), std::invalid_argument);
    CHECK_THROWS_AS(table_space({0, 2}, {1, 1}), std::invalid_argument);
  }
  SUBCASE("enumeration cap") {
    CHECK_THROWS_AS(table_space({50, 50, 50}, {50, 50, 50}, 100), std::length_error);
  }
}

TEST_CASE("table space margins are exact") {
  const TableSpace ts = table_space({3, 1}, {2, 2});
  for (std::size_t t = 0; t < ts.size(); ++t) {
    const auto& table = ts.table(t);
    for (std::size_t r = 0; r < ts.rows(); ++r) {
      int sum = 0;
      for (std::size_t c = 0; c < ts.cols(); ++c) sum += table[r * ts.cols() + c];
      CHECK(sum == ts.row_sums()[r]);
    }
    for (std::size_t c = 0; c < ts.cols(); ++c) {
      int sum = 0;
      for (std::size_t r = 0; r < ts.rows(); ++r) sum += table[r * ts.cols() + c];
      CHECK(sum == ts.col_sums()[c]);
    }
  }
}

TEST_CASE("table space matches brute-force enumeration of 2x2 tables") {
  // Oracle: scan all 2x2 tables with entries 0..4.
  auto count_tables = [](int r0, int r1, int c0, int c1) {
    int count = 0;
    for (int a = 0; a <= r0; ++a) {
      for (int b = 0; b <= r0 - a; ++b) {
        if (a + b != r0) continue;
        const int c = c0 - a;
        const int d = c1 - b;
        if (c >= 0 && d >= 0 && c + d == r1) ++count;
      }
    }
    return count;
  };
  for (auto [r0, r1, c0, c1] : {std::array{2, 2, 2, 2}, std::array{3, 1, 2, 2},
                                std::array{4, 2, 3, 3}}) {
    const TableSpace ts = table_space({r0, r1}, {c0, c1});
    CHECK(static_cast<int>(ts.size()) == count_tables(r0, r1, c0, c1));
  }
}

TEST_CASE("table chain reaches uniform from any start") {
  for (auto margins : {std::pair{std::vector{2, 2}, std::vector{2, 2}},
                       std::pair{std::vector{3, 2, 1}, std::vector{2, 2, 2}}}) {
    const TableSpace ts = table_space(margins.first, margins.second);
    const Kernel k = table_kernel(ts);
    const Dist uniform = Dist::uniform(ts.size());
    const auto steps = static_cast<std::int64_t>(10 * ts.size() * ts.size());
    for (std::size_t start = 0; start < ts.size(); ++start) {
      const Dist law = evolve(k, Dist::point_mass(ts.size(), start), steps);
      CHECK(tv_distance(law, uniform) < 0.01);
    }
  }
}
