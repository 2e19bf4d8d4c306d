#include "mixlab/permutations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <stdexcept>

#include "doctest.h"
#include "mixlab/rng.hpp"

using namespace mixlab;

namespace {

GroupMeasure random_measure(int n, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(factorial(n)));
  double sum = 0.0;
  for (double& v : w) {
    v = rng.uniform01();
    sum += v;
  }
  for (double& v : w) v /= sum;
  return GroupMeasure(n, std::move(w));
}

}  // namespace

TEST_CASE("rank and unrank") {
  CHECK(perm_rank(identity_perm(5)) == 0);
  CHECK(perm_unrank(5, 0) == identity_perm(5));
  for (std::int64_t r = 0; r < factorial(5); ++r) {
    CHECK(perm_rank(perm_unrank(5, r)) == r);
  }
  // Rank order is lexicographic in one-line notation.
  Perm previous = perm_unrank(4, 0);
  for (std::int64_t r = 1; r < factorial(4); ++r) {
    const Perm current = perm_unrank(4, r);
    CHECK(std::lexicographical_compare(previous.begin(), previous.end(), current.begin(),
                                       current.end()));
    previous = current;
  }
  CHECK_THROWS_AS(perm_rank(Perm{0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(perm_unrank(3, 6), std::out_of_range);
}

TEST_CASE("compose and inverse") {
  const Perm a{1, 2, 0};
  const Perm b{0, 2, 1};
  const Perm ab = compose(a, b);  // a after b
  CHECK(ab == Perm{1, 0, 2});
  CHECK(compose(a, inverse_perm(a)) == identity_perm(3));
  CHECK(compose(inverse_perm(a), a) == identity_perm(3));
}

TEST_CASE("inversions and cycle type") {
  CHECK(inversions(identity_perm(4)) == 0);
  CHECK(inversions(Perm{3, 2, 1, 0}) == 6);
  CHECK(cycle_type(Perm{1, 0, 2, 3}) == std::vector<int>{2, 1, 1});
  CHECK(cycle_type(Perm{1, 2, 3, 0}) == std::vector<int>{4});
}

TEST_CASE("convolution convention") {
  // delta_s * delta_t = delta_{ts}, over all 36 pairs in S_3.
  for (std::int64_t rs = 0; rs < 6; ++rs) {
    for (std::int64_t rt = 0; rt < 6; ++rt) {
      const Perm s = perm_unrank(3, rs);
      const Perm t = perm_unrank(3, rt);
      const GroupMeasure conv =
          convolve(GroupMeasure::point_mass(3, s), GroupMeasure::point_mass(3, t));
      const std::int64_t expected = perm_rank(compose(t, s));
      for (std::size_t r = 0; r < conv.size(); ++r) {
        CHECK(conv[r] == (static_cast<std::int64_t>(r) == expected ? 1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("convolution identities") {
  Rng rng(101);
  const GroupMeasure q = random_measure(4, rng);
  const GroupMeasure u = GroupMeasure::uniform(4);
  const GroupMeasure id = GroupMeasure::point_mass(4, identity_perm(4));

  SUBCASE("identity element") {
    const GroupMeasure r = convolve(q, id);
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(r[i] == doctest::Approx(q[i]));
    const GroupMeasure l = convolve(id, q);
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(l[i] == doctest::Approx(q[i]));
  }
  SUBCASE("uniform absorbs") {
    const GroupMeasure r = convolve(u, q);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(1.0 / 24.0));
  }
  SUBCASE("associativity on random triples") {
    for (int trial = 0; trial < 5; ++trial) {
      const GroupMeasure a = random_measure(4, rng);
      const GroupMeasure b = random_measure(4, rng);
      const GroupMeasure c = random_measure(4, rng);
      const GroupMeasure left = convolve(convolve(a, b), c);
      const GroupMeasure right = convolve(a, convolve(b, c));
      for (std::size_t i = 0; i < left.size(); ++i) {
        CHECK(left[i] == doctest::Approx(right[i]).epsilon(1e-12));
      }
    }
  }
  SUBCASE("convolve_power agrees with repeated convolve") {
    GroupMeasure direct = GroupMeasure::point_mass(4, identity_perm(4));
    for (int k = 0; k <= 4; ++k) {
      const GroupMeasure powered = convolve_power(q, k);
      for (std::size_t i = 0; i < powered.size(); ++i) {
        CHECK(powered[i] == doctest::Approx(direct[i]).epsilon(1e-12));
      }
      direct = convolve(q, direct);
    }
  }
}

TEST_CASE("cut measure") {
  const GroupMeasure c3 = cut_measure(3);
  CHECK(c3[perm_rank(identity_perm(3))] == doctest::Approx(1.0 / 3.0));
  CHECK(c3[perm_rank(Perm{1, 2, 0})] == doctest::Approx(1.0 / 3.0));
  CHECK(c3[perm_rank(Perm{2, 0, 1})] == doctest::Approx(1.0 / 3.0));

  // Rotations commute, so the convolution is order-independent.
  const GroupMeasure c4 = cut_measure(4);
  const GroupMeasure ab = convolve(c4, cut_measure(4));
  const GroupMeasure ba = convolve(cut_measure(4), c4);
  for (std::size_t i = 0; i < ab.size(); ++i) CHECK(ab[i] == doctest::Approx(ba[i]));

  Rng rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const GroupMeasure q = random_measure(4, rng);
    CHECK(tv_to_uniform(convolve(cut_measure(4), q)) <= tv_to_uniform(q) + 1e-12);
  }
}

TEST_CASE("random transpositions measure") {
  const GroupMeasure q2 = random_transpositions_measure(2);
  CHECK(q2[0] == doctest::Approx(0.5));
  CHECK(q2[1] == doctest::Approx(0.5));

  for (int n : {3, 5, 7}) {
    const GroupMeasure q = random_transpositions_measure(n);
    double sum = 0.0;
    for (double w : q.weights()) sum += w;
    CHECK(sum == doctest::Approx(1.0));
    CHECK(q[0] == doctest::Approx(1.0 / n));
  }
}

TEST_CASE("random transpositions: paper bound at n=7, k=21") {
  const int n = 7;
  const auto k = static_cast<std::int64_t>(
      std::ceil(0.5 * n * std::log(static_cast<double>(n)) + 2.0 * n));
  CHECK(k == 21);
  const GroupMeasure law = convolve_power(random_transpositions_measure(n), k);
  CHECK(tv_to_uniform(law) <= 2.0 * std::exp(-2.0));
}

TEST_CASE("random transpositions law is a class function") {
  const GroupMeasure q = random_transpositions_measure(6);
  for (std::int64_t k : {1, 2, 5}) {
    const GroupMeasure law = convolve_power(q, k);
    // Group weights by cycle type; within a type all weights must agree.
    std::map<std::vector<int>, double> seen;
    for (std::size_t r = 0; r < law.size(); ++r) {
      const auto type = cycle_type(perm_unrank(6, static_cast<std::int64_t>(r)));
      const auto [it, fresh] = seen.emplace(type, law[r]);
      if (!fresh) CHECK(law[r] == doctest::Approx(it->second).epsilon(1e-12));
    }
  }
}

TEST_CASE("top swap or cut") {
  const GroupMeasure q3 = top_swap_or_cut_measure(3);
  int support = 0;
  for (double w : q3.weights()) support += w > 0.0;
  CHECK(support == 2);

  SUBCASE("odd n: ergodic, full support eventually") {
    const GroupMeasure q = top_swap_or_cut_measure(5);
    GroupMeasure law = convolve_power(q, 1);
    bool full = false;
    for (int k = 2; k <= 40 && !full; ++k) {
      law = convolve(q, law);
      full = std::all_of(law.weights().begin(), law.weights().end(),
                         [](double w) { return w > 0.0; });
    }
    CHECK(full);
  }
  SUBCASE("even n: parity alternates and TV stays above 1/2") {
    const GroupMeasure q = top_swap_or_cut_measure(4);
    const auto profile = convolution_tv_profile(q, 200);
    CHECK(profile.back() >= 0.5 - 1e-9);
  }
  SUBCASE("growth beyond n^2 on odd sizes") {
    auto tmix = [](int n) {
      const auto profile = convolution_tv_profile(top_swap_or_cut_measure(n), 4000);
      TVProfile tmp;
      tmp.steps.assign(profile.size(), 0);
      for (std::size_t i = 0; i < profile.size(); ++i) tmp.steps[i] = static_cast<std::int64_t>(i);
      tmp.values = profile;
      const auto t = mixing_time(tmp, 0.25);
      REQUIRE(t.has_value());
      return static_cast<double>(*t);
    };
    const double t5 = tmix(5);
    const double t7 = tmix(7);
    CHECK(t7 / t5 > (7.0 * 7.0) / (5.0 * 5.0));
  }
}

TEST_CASE("gsr measure and the closed-form riffle TV") {
  SUBCASE("one riffle of two cards") {
    const GroupMeasure q = gsr_measure(2);
    CHECK(q[perm_rank(identity_perm(2))] == doctest::Approx(0.75));
    CHECK(q[perm_rank(Perm{1, 0})] == doctest::Approx(0.25));
  }
  SUBCASE("k = 0 is a point mass") {
    CHECK(riffle_tv_exact(3, 0) == doctest::Approx(1.0 - 1.0 / 6.0));
    CHECK(riffle_tv_exact(5, 0) == doctest::Approx(1.0 - 1.0 / 120.0));
    CHECK(riffle_tv_exact(52, 0) == doctest::Approx(1.0));  // 1 - 1/52!
  }
  SUBCASE("closed form matches dense convolution for n <= 6") {
    for (int n : {3, 4, 5, 6}) {
      const GroupMeasure q = gsr_measure(n);
      for (int k = 0; k <= 8; ++k) {
        const GroupMeasure law = convolve_power(q, k);
        CHECK(std::abs(tv_to_uniform(law) - riffle_tv_exact(n, k)) < 1e-12);
      }
    }
  }
  SUBCASE("52 cards cross 1/2 at seven riffles") {
    std::int64_t first = -1;
    double previous = 1.0;
    for (int k = 0; k <= 12; ++k) {
      const double tv = riffle_tv_exact(52, k);
      CHECK(tv <= previous + 1e-15);  // non-increasing in k
      previous = tv;
      if (first < 0 && tv < 0.5) first = k;
    }
    CHECK(first == 7);
  }
}

TEST_CASE("fulman cut check") {
  const auto rows = fulman_cut_check(5, 24);
  for (const auto& row : rows) {
    CHECK(row.tv_cut <= row.tv_plain + 1e-12);  // cutting never increases distance
  }
  CHECK(rows.back().tv_plain < 1e-6);
  CHECK(rows.back().tv_cut < 1e-6);

  // Both profiles cross 1/4 within one step of each other.
  auto crossing = [&](bool cut) {
    for (const auto& row : rows) {
      if ((cut ? row.tv_cut : row.tv_plain) <= 0.25) return row.k;
    }
    return static_cast<std::int64_t>(-1);
  };
  const std::int64_t plain = crossing(false);
  const std::int64_t with_cut = crossing(true);
  REQUIRE(plain >= 0);
  REQUIRE(with_cut >= 0);
  CHECK(std::abs(plain - with_cut) <= 1);
}

TEST_CASE("mallows distribution") {
  CHECK_THROWS_AS(mallows_distribution(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(mallows_distribution(4, 1.5), std::invalid_argument);

  SUBCASE("theta = 1 is uniform") {
    const GroupMeasure m = mallows_distribution(4, 1.0);
    for (double w : m.weights()) CHECK(w == doctest::Approx(1.0 / 24.0));
  }
  SUBCASE("hand normalizer at n = 3, theta = 1/2") {
    CHECK(mallows_normalizer(3, 0.5) == doctest::Approx(2.625));
    const GroupMeasure m = mallows_distribution(3, 0.5);
    CHECK(m[perm_rank(identity_perm(3))] == doctest::Approx(1.0 / 2.625));
  }
  SUBCASE("weights fall off in inversions") {
    const GroupMeasure m = mallows_distribution(4, 0.5);
    CHECK(m[perm_rank(identity_perm(4))] > m[perm_rank(Perm{3, 2, 1, 0})]);
  }
}

TEST_CASE("scan kernels fix the mallows law") {
  for (double theta : {0.3, 0.5, 0.9, 1.0}) {
    for (ScanMode mode : {ScanMode::systematic, ScanMode::random}) {
      const ScanKernel scan = scan_kernel(4, theta, mode);
      const Dist target = scan.stationary().dist();
      const Dist stepped = scan.step(target);
      CHECK(tv_distance(stepped, target) < 1e-12);
    }
  }
}

TEST_CASE("scan kernel materialization and stationarity at n = 5") {
  for (double theta : {0.3, 0.5, 0.9}) {
    for (ScanMode mode : {ScanMode::systematic, ScanMode::random}) {
      const ScanKernel scan = scan_kernel(5, theta, mode);
      const Kernel k = scan.as_kernel();
      const Dist target = scan.stationary().dist();
      CHECK(stationarity_residual(k, target) < 1e-10);
    }
  }
  CHECK_THROWS_AS(scan_kernel(7, 0.5, ScanMode::systematic).as_kernel(720), std::length_error);
}

TEST_CASE("systematic sweep order and cost") {
  const ScanKernel sys = scan_kernel(5, 0.5, ScanMode::systematic);
  CHECK(sys.step_cost() == 7);  // (1,2)...(4,5) then (3,4)...(1,2)
  const ScanKernel rnd = scan_kernel(5, 0.5, ScanMode::random);
  CHECK(rnd.step_cost() == 1);
}

TEST_CASE("cost-adjusted mixing comparison, n = 5") {
  const int n = 5;
  const double theta = 0.5;
  const Dist start = Dist::point_mass(static_cast<std::size_t>(factorial(n)),
                                      static_cast<std::size_t>(perm_rank(Perm{4, 3, 2, 1, 0})));
  const ScanKernel sys = scan_kernel(n, theta, ScanMode::systematic);
  const ScanKernel rnd = scan_kernel(n, theta, ScanMode::random);
  const auto t_sys = sys.mixing_time_from(start, 0.25, 2000);
  const auto t_rnd = rnd.mixing_time_from(start, 0.25, 20000);
  REQUIRE(t_sys.has_value());
  REQUIRE(t_rnd.has_value());
  const double cost_ratio =
      static_cast<double>(*t_sys * sys.step_cost()) / static_cast<double>(*t_rnd);
  CHECK(cost_ratio > 1.0 / 8.0);
  CHECK(cost_ratio < 8.0);
}

TEST_CASE("shuffle statistics") {
  CHECK(adjacency_statistic(identity_perm(5)) == 4);
  CHECK(adjacency_statistic(Perm{0, 2, 4, 1, 3}) == 0);
  CHECK(lis_length(identity_perm(9)) == 9);
  CHECK(lis_length(Perm{8, 7, 6, 5, 4, 3, 2, 1, 0}) == 1);
  CHECK(lis_length(Perm{2, 0, 1, 4, 3}) == 3);
}

TEST_CASE("null distribution of the adjacency statistic") {
  const NullDistribution null = null_distribution(Statistic::adjacency, 52, 20000, 8675309);
  // Exact mean under uniformity is 2(n-1)/n = 1.9615...
  CHECK(null.mean == doctest::Approx(2.0 * 51.0 / 52.0).epsilon(0.02));
  std::int64_t total = 0;
  for (const auto& [value, count] : null.counts) total += count;
  CHECK(total == 20000);

  const NullDistribution again = null_distribution(Statistic::adjacency, 52, 20000, 8675309);
  CHECK(again.mean == null.mean);
}

TEST_CASE("permutation file ingestion") {
  std::istringstream in("3,1,2\n1,2,3\n\n2,1,3\n");
  const auto perms = read_permutations(in);
  REQUIRE(perms.size() == 3);
  CHECK(perms[0] == Perm{2, 0, 1});
  CHECK(perms[1] == identity_perm(3));

  std::istringstream bad("1,1,2\n");
  CHECK_THROWS_AS(read_permutations(bad), std::invalid_argument);
}
