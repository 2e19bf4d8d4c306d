#include "mixlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "mixlab/grid_walks.hpp"
#include "mixlab/hypercube.hpp"
#include "mixlab/kernel.hpp"
#include "mixlab/lifted.hpp"
#include "mixlab/measures.hpp"
#include "mixlab/modular_affine.hpp"
#include "mixlab/permutations.hpp"
#include "mixlab/rng.hpp"
#include "mixlab/spectral.hpp"

namespace mixlab {

// Every pass/fail band in the suite, in one place.
namespace bands {

// AC-1: path walk, t(2n)/t(n) for n in {16, 32, 64, 128}
constexpr double kPathRatioLo = 3.4;
constexpr double kPathRatioHi = 4.6;

// AC-2: 2-D disc radii 4 and 8; table chain margins (2,2)/(2,2)
constexpr double kDiscRatioLo = 3.0;
constexpr double kDiscRatioHi = 5.0;
constexpr double kTableTvMax = 0.01;

// AC-3: doubling walk
constexpr double kCdgValue = 1.01999186;
constexpr double kCdgTol = 1e-8;
constexpr double kDoublingStepFactor = 1.3;
constexpr double kDoublingTvMax = 0.3;
constexpr double kDoublingFractionMin = 0.9;
constexpr double kPlainTvMin = 0.9;
constexpr int kDoublingSampleCount = 50;
constexpr std::int64_t kDoublingPMin = 1000;
constexpr std::int64_t kDoublingPMax = 20000;
constexpr std::uint64_t kDoublingSeed = 20250601;

// AC-4: lifted walk vs path walk, n in {64, 128, 256}
constexpr double kLiftedRatioLo = 1.6;
constexpr double kLiftedRatioHi = 2.4;
constexpr double kColumnSumTol = 1e-12;

// AC-5: gap-vs-theta grid on n = 256
constexpr double kGapGridStart = 0.25;
constexpr double kGapGridStop = 4.0;
constexpr double kGapGridStep = 0.25;

// AC-6: Mallows scans at n = 5
constexpr double kScanStationaryTol = 1e-10;
constexpr double kScanRatioLo = 1.0 / 8.0;
constexpr double kScanRatioHi = 8.0;

// AC-7: riffles
constexpr int kRiffleDeck = 52;
constexpr std::int64_t kRiffleCrossing = 7;
constexpr double kRiffleOracleTol = 1e-12;

// AC-8: cuts
constexpr int kCutTrials = 100;
constexpr std::uint64_t kCutSeed = 424242;
constexpr std::int64_t kFulmanCrossingSlack = 1;

// AC-9: random transpositions, n = 7, c = 2
const double kTranspositionTvMax = 2.0 * std::exp(-2.0);

// AC-10: hypercube
constexpr double kBasisEquivalenceTol = 1e-10;
constexpr double kTransformOracleTol = 1e-12;
constexpr double kWilsonConstant = 0.24853;
constexpr double kWilsonConstantTol = 5e-5;
constexpr double kWilsonMedianLo = 0.5;
constexpr double kWilsonMedianHi = 2.0;
constexpr std::uint64_t kWilsonSeed = 816;

// AC-11: statistics
constexpr double kAdjacencyMean = 2.0;
constexpr double kAdjacencyMeanTol = 0.05;
constexpr std::uint64_t kStatsSeed = 1952;

// AC-12: engine properties
constexpr double kChiSquareIdentityTol = 1e-8;
constexpr double kMassTol = 1e-12;
constexpr std::uint64_t kEngineSeed = 31415926;

}  // namespace bands

namespace {

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

std::int64_t path_tmix(std::size_t n) {
  const auto t = find_mixing_time(path_kernel(n), Dist::point_mass(n, 0), Dist::uniform(n),
                                  0.25,
                                  static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n) * 20);
  return t ? *t : -1;
}

// Random reversible chain: symmetric weights, row normalization, Metropolis
// correction toward a random positive target.
std::pair<Kernel, Dist> random_reversible(Rng& stream, std::size_t m) {
  std::vector<double> target(m);
  double tsum = 0.0;
  for (double& v : target) {
    v = 0.1 + stream.uniform01();
    tsum += v;
  }
  for (double& v : target) v /= tsum;
  const Dist pi(target);

  std::vector<double> weight(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double w = 0.05 + stream.uniform01();
      weight[i * m + j] = w;
      weight[j * m + i] = w;
    }
  }
  std::vector<double> row_sum(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) row_sum[i] += weight[i * m + j];
  }
  std::vector<std::vector<KernelEntry>> rows(m);
  for (std::size_t i = 0; i < m; ++i) {
    double hold = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const double forward = weight[i * m + j] / row_sum[i];
      const double backward = weight[j * m + i] / row_sum[j];
      const double prob = forward * std::min(1.0, pi[j] * backward / (pi[i] * forward));
      rows[i].push_back({static_cast<std::uint32_t>(j), prob});
      hold -= prob;
    }
    rows[i].push_back({static_cast<std::uint32_t>(i), hold});
  }
  return {Kernel(m, std::move(rows), "engine-check"), pi};
}

CriterionResult ac1_path_scaling() {
  CriterionResult r;
  r.id = "AC-1";
  std::map<std::size_t, double> t;
  for (std::size_t n : {16, 32, 64, 128, 256}) t[n] = static_cast<double>(path_tmix(n));
  bool pass = true;
  std::ostringstream detail;
  detail << "ratios";
  for (std::size_t n : {16, 32, 64, 128}) {
    const double ratio = t[2 * n] / t[n];
    pass = pass && ratio >= bands::kPathRatioLo && ratio <= bands::kPathRatioHi;
    detail << ' ' << fmt("%.2f", ratio);
  }
  detail << fmt(" (band %.1f..%.1f)", bands::kPathRatioLo, bands::kPathRatioHi);
  r.pass = pass;
  r.detail = detail.str();
  return r;
}

CriterionResult ac2_lattice_and_tables() {
  CriterionResult r;
  r.id = "AC-2";
  auto disc_tmix = [](double radius) {
    const LatticeRegion disc = LatticeRegion::disc(radius);
    const Kernel k = lattice_kernel(disc);
    const auto start = static_cast<std::size_t>(disc.index_of({static_cast<int>(radius), 0}));
    return static_cast<double>(*find_mixing_time(k, Dist::point_mass(disc.size(), start),
                                                 Dist::uniform(disc.size()), 0.25, 200000));
  };
  const double ratio = disc_tmix(8.0) / disc_tmix(4.0);
  const bool disc_ok = ratio >= bands::kDiscRatioLo && ratio <= bands::kDiscRatioHi;

  const TableSpace ts = table_space({2, 2}, {2, 2});
  const Kernel k = table_kernel(ts);
  const auto steps = static_cast<std::int64_t>(10 * ts.size() * ts.size());
  double worst_tv = 0.0;
  for (std::size_t start = 0; start < ts.size(); ++start) {
    const Dist law = evolve(k, Dist::point_mass(ts.size(), start), steps);
    worst_tv = std::max(worst_tv, tv_distance(law, Dist::uniform(ts.size())));
  }
  const bool table_ok = worst_tv < bands::kTableTvMax;

  r.pass = disc_ok && table_ok;
  r.detail = fmt("disc ratio %.2f (band %.0f..%.0f), table worst TV %.2e (max %.2f)", ratio,
                 bands::kDiscRatioLo, bands::kDiscRatioHi, worst_tv, bands::kTableTvMax);
  return r;
}

CriterionResult ac3_doubling() {
  CriterionResult r;
  r.id = "AC-3";
  const double cstar = cdg_constant();
  const bool cstar_ok = std::abs(cstar - bands::kCdgValue) <= bands::kCdgTol;

  Rng rng(bands::kDoublingSeed);
  std::vector<std::int64_t> ps;
  const std::int64_t half_range = (bands::kDoublingPMax - bands::kDoublingPMin) / 2;
  for (int i = 0; i < bands::kDoublingSampleCount; ++i) {
    ps.push_back(bands::kDoublingPMin + 1 +
                 2 * static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(half_range))));
  }
  const auto rows = doubling_speedup_experiment(ps, bands::kDoublingStepFactor);
  const double fraction = doubling_pass_fraction(rows, bands::kDoublingTvMax);
  bool plain_ok = true;
  for (const auto& row : rows) plain_ok = plain_ok && row.tv_plain > bands::kPlainTvMin;

  r.pass = cstar_ok && fraction >= bands::kDoublingFractionMin && plain_ok;
  r.detail = fmt("C*=%.9f (|err|<=1e-8: %s), doubling pass fraction %.2f (min %.2f), "
                 "plain TV > %.1f everywhere: %s",
                 cstar, cstar_ok ? "yes" : "no", fraction, bands::kDoublingFractionMin,
                 bands::kPlainTvMin, plain_ok ? "yes" : "no");
  return r;
}

CriterionResult ac4_lifted_vs_path() {
  CriterionResult r;
  r.id = "AC-4";
  const std::vector<std::size_t> ns{64, 128, 256, 512};
  const auto rows = lifted_vs_diffusive(ns);
  bool pass = true;
  std::ostringstream detail;
  detail << "lifted/path ratios";
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double lifted = static_cast<double>(rows[i + 1].tmix_lifted) /
                          static_cast<double>(rows[i].tmix_lifted);
    const double path =
        static_cast<double>(rows[i + 1].tmix_path) / static_cast<double>(rows[i].tmix_path);
    pass = pass && lifted >= bands::kLiftedRatioLo && lifted <= bands::kLiftedRatioHi;
    pass = pass && path >= bands::kPathRatioLo && path <= bands::kPathRatioHi;
    detail << ' ' << fmt("%.2f/%.2f", lifted, path);
  }

  const Kernel k = dhn_kernel(LiftedSpec{256, 0.0});
  std::vector<double> col(k.size(), 0.0);
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (const auto& e : k.rows()[i]) col[e.target] += e.prob;
  }
  double worst = 0.0;
  for (double sum : col) worst = std::max(worst, std::abs(sum - 1.0));
  pass = pass && worst <= bands::kColumnSumTol;
  detail << fmt(", column-sum residual %.1e", worst);

  r.pass = pass;
  r.detail = detail.str();
  return r;
}

CriterionResult ac5_gap_grid() {
  CriterionResult r;
  r.id = "AC-5";
  const auto grid = theta_grid(bands::kGapGridStart, bands::kGapGridStop, bands::kGapGridStep);
  const GapCurve curve = gap_vs_theta(256, grid);
  const auto at_one = std::find_if(curve.points.begin(), curve.points.end(),
                                   [](const GapPoint& p) { return p.theta == 1.0; });
  const double best = curve.points[curve.argmax].gap;
  r.pass = at_one != curve.points.end() && best >= at_one->gap;
  r.detail = fmt("argmax theta %.2f gap %.5f vs gap(1.0) %.5f", curve.points[curve.argmax].theta,
                 best, at_one == curve.points.end() ? -1.0 : at_one->gap);
  return r;
}

CriterionResult ac6_scans() {
  CriterionResult r;
  r.id = "AC-6";
  bool stationary_ok = true;
  double worst = 0.0;
  for (double theta : {0.3, 0.5, 0.9}) {
    for (ScanMode mode : {ScanMode::systematic, ScanMode::random}) {
      const ScanKernel scan = scan_kernel(5, theta, mode);
      const double residual = stationarity_residual(scan.as_kernel(), scan.stationary().dist());
      worst = std::max(worst, residual);
      stationary_ok = stationary_ok && residual < bands::kScanStationaryTol;
    }
  }

  const Dist start =
      Dist::point_mass(120, static_cast<std::size_t>(perm_rank(Perm{4, 3, 2, 1, 0})));
  const ScanKernel sys = scan_kernel(5, 0.5, ScanMode::systematic);
  const ScanKernel rnd = scan_kernel(5, 0.5, ScanMode::random);
  const auto t_sys = sys.mixing_time_from(start, 0.25, 4000);
  const auto t_rnd = rnd.mixing_time_from(start, 0.25, 40000);
  double ratio = -1.0;
  bool ratio_ok = false;
  if (t_sys && t_rnd && *t_rnd > 0) {
    ratio = static_cast<double>(*t_sys * sys.step_cost()) / static_cast<double>(*t_rnd);
    ratio_ok = ratio >= bands::kScanRatioLo && ratio <= bands::kScanRatioHi;
  }
  r.pass = stationary_ok && ratio_ok;
  r.detail = fmt("worst stationarity residual %.1e (max 1e-10), cost-adjusted ratio %.2f "
                 "(band %.3f..%.0f)",
                 worst, ratio, bands::kScanRatioLo, bands::kScanRatioHi);
  return r;
}

CriterionResult ac7_riffle() {
  CriterionResult r;
  r.id = "AC-7";
  std::int64_t first = -1;
  for (int k = 0; k <= 12 && first < 0; ++k) {
    if (riffle_tv_exact(bands::kRiffleDeck, k) < 0.5) first = k;
  }

  double worst = 0.0;
  for (int n = 3; n <= 6; ++n) {
    const GroupMeasure q = gsr_measure(n);
    for (int k = 0; k <= 8; ++k) {
      const double dense = tv_to_uniform(convolve_power(q, k));
      worst = std::max(worst, std::abs(dense - riffle_tv_exact(n, k)));
    }
  }

  r.pass = first == bands::kRiffleCrossing && worst < bands::kRiffleOracleTol;
  r.detail = fmt("first k with TV<1/2 at n=52: %lld (want %lld); closed-form vs dense max "
                 "err %.2e (max 1e-12)",
                 static_cast<long long>(first), static_cast<long long>(bands::kRiffleCrossing),
                 worst);
  return r;
}

CriterionResult ac8_cuts() {
  CriterionResult r;
  r.id = "AC-8";
  Rng rng(bands::kCutSeed);
  const GroupMeasure cut = cut_measure(4);
  bool contraction_ok = true;
  for (int trial = 0; trial < bands::kCutTrials; ++trial) {
    std::vector<double> w(24);
    double sum = 0.0;
    for (double& v : w) {
      v = rng.uniform01();
      sum += v;
    }
    for (double& v : w) v /= sum;
    const GroupMeasure q(4, std::move(w));
    contraction_ok =
        contraction_ok && tv_to_uniform(convolve(cut, q)) <= tv_to_uniform(q) + 1e-12;
  }

  const auto rows = fulman_cut_check(5, 14);
  std::int64_t plain_cross = -1;
  std::int64_t cut_cross = -1;
  bool gap_ok = true;
  for (const auto& row : rows) {
    gap_ok = gap_ok && row.tv_cut <= row.tv_plain + 1e-12;
    if (plain_cross < 0 && row.tv_plain <= 0.25) plain_cross = row.k;
    if (cut_cross < 0 && row.tv_cut <= 0.25) cut_cross = row.k;
  }
  const bool crossing_ok = plain_cross >= 0 && cut_cross >= 0 &&
                           std::abs(plain_cross - cut_cross) <= bands::kFulmanCrossingSlack;

  r.pass = contraction_ok && gap_ok && crossing_ok;
  r.detail = fmt("contraction on %d random Q: %s; crossings plain=%lld cut=%lld (slack %lld)",
                 bands::kCutTrials, contraction_ok ? "yes" : "no",
                 static_cast<long long>(plain_cross), static_cast<long long>(cut_cross),
                 static_cast<long long>(bands::kFulmanCrossingSlack));
  return r;
}

CriterionResult ac9_transpositions() {
  CriterionResult r;
  r.id = "AC-9";
  const int n = 7;
  const auto k = static_cast<std::int64_t>(
      std::ceil(0.5 * n * std::log(static_cast<double>(n)) + 2.0 * n));
  const GroupMeasure law = convolve_power(random_transpositions_measure(n), k);
  const double tv = tv_to_uniform(law);

  bool class_ok = true;
  const GroupMeasure q6 = random_transpositions_measure(6);
  for (std::int64_t kk : {1, 3, 6}) {
    const GroupMeasure l6 = convolve_power(q6, kk);
    std::map<std::vector<int>, double> seen;
    for (std::size_t rr = 0; rr < l6.size(); ++rr) {
      const auto type = cycle_type(perm_unrank(6, static_cast<std::int64_t>(rr)));
      const auto [it, fresh] = seen.emplace(type, l6[rr]);
      if (!fresh && std::abs(l6[rr] - it->second) > 1e-12) class_ok = false;
    }
  }

  r.pass = k == 21 && tv <= bands::kTranspositionTvMax && class_ok;
  r.detail = fmt("k=%lld, TV=%.4f (max %.4f = 2e^-2), class-function on S6: %s",
                 static_cast<long long>(k), tv, bands::kTranspositionTvMax,
                 class_ok ? "yes" : "no");
  return r;
}

CriterionResult ac10_hypercube() {
  CriterionResult r;
  r.id = "AC-10";
  const auto eq_rows = basis_equivalence_check(9, {1, 2, 3, 4, 5, 6, 7, 8, 9}, 60);
  double worst_dev = 0.0;
  int eligible = 0;
  for (const auto& row : eq_rows) {
    if (row.gcd_ok && row.basis_ok) {
      ++eligible;
      worst_dev = std::max(worst_dev, row.max_deviation);
    }
  }
  const bool equivalence_ok = eligible >= 2 && worst_dev < bands::kBasisEquivalenceTol;

  const GeneratorSet g12 = spatula_generators(12, 5);
  const Kernel k12 = hypercube_kernel(g12);
  const auto profile = hypercube_tv_profile(g12, 10);
  Dist law = Dist::point_mass(k12.size(), 0);
  double worst_oracle = 0.0;
  for (std::int64_t step = 0; step <= 10; ++step) {
    if (step > 0) law = k12.apply(law);
    worst_oracle = std::max(worst_oracle,
                            std::abs(profile[static_cast<std::size_t>(step)] -
                                     tv_distance(law, Dist::uniform(k12.size()))));
  }

  const double tn = wilson_threshold(1000, 2000) / 1000.0;
  const bool threshold_ok = std::abs(tn - bands::kWilsonConstant) <= bands::kWilsonConstantTol;

  const WilsonReport report = wilson_experiment(16, 32, 20, bands::kWilsonSeed);
  const bool median_ok = report.median_ratio >= bands::kWilsonMedianLo &&
                         report.median_ratio <= bands::kWilsonMedianHi;

  r.pass =
      equivalence_ok && worst_oracle < bands::kTransformOracleTol && threshold_ok && median_ok;
  r.detail = fmt("basis-passing d: %d (max dev %.1e); transform-vs-dense %.1e; "
                 "T(1000,2000)/1000=%.6f; wilson median ratio %.2f",
                 eligible, worst_dev, worst_oracle, tn, report.median_ratio);
  return r;
}

CriterionResult ac11_statistics() {
  CriterionResult r;
  r.id = "AC-11";
  const NullDistribution null =
      null_distribution(Statistic::adjacency, 52, 100000, bands::kStatsSeed);
  const bool mean_ok = std::abs(null.mean - bands::kAdjacencyMean) <= bands::kAdjacencyMeanTol;

  bool lis_ok = true;
  for (int n : {5, 9, 52}) {
    Perm reversal(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) reversal[static_cast<std::size_t>(i)] = n - 1 - i;
    lis_ok = lis_ok && lis_length(identity_perm(n)) == n && lis_length(reversal) == 1;
  }

  r.pass = mean_ok && lis_ok;
  r.detail = fmt("adjacency mean %.4f (band 2 +/- 0.05, 1e5 samples); lis extremes: %s",
                 null.mean, lis_ok ? "ok" : "wrong");
  return r;
}

CriterionResult ac12_engine() {
  CriterionResult r;
  r.id = "AC-12";
  Rng rng(bands::kEngineSeed);
  double worst_identity = 0.0;
  double worst_mass = 0.0;
  for (int chain = 0; chain < 20; ++chain) {
    Rng stream = rng.split(static_cast<std::uint64_t>(chain));
    const std::size_t m = 3 + stream.below(48);
    const auto [k, pi] = random_reversible(stream, m);
    const auto s = spectral_decomposition(k, pi);
    const std::size_t i = stream.below(m);
    Dist law = Dist::point_mass(m, i);
    for (std::int64_t l = 0; l <= 200; ++l) {
      if (l > 0) law = k.apply(law);
      if (l == 0 || l == 1 || l == 10 || l == 60 || l == 200) {
        worst_identity = std::max(
            worst_identity, std::abs(chi_square_spectral(s, i, l) - chi_square(law, pi)));
      }
      worst_mass = std::max(worst_mass, std::abs(law.total_mass() - 1.0));
    }
  }

  {
    const Kernel k = path_kernel(128);
    Dist law = Dist::point_mass(128, 0);
    for (int l = 0; l < 50000; ++l) law = k.apply(law);
    worst_mass = std::max(worst_mass, std::abs(law.total_mass() - 1.0));
  }

  bool inequalities_ok = true;
  for (int pair = 0; pair < 1000; ++pair) {
    const std::size_t m = 2 + rng.below(15);
    std::vector<double> pw(m);
    std::vector<double> qw(m);
    double ps = 0.0;
    double qs = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      pw[j] = rng.uniform01();
      ps += pw[j];
      qw[j] = 0.05 + rng.uniform01();
      qs += qw[j];
    }
    for (std::size_t j = 0; j < m; ++j) {
      pw[j] /= ps;
      qw[j] /= qs;
    }
    const Dist p(pw);
    const Dist pi(qw);
    const double tv = tv_distance(p, pi);
    inequalities_ok = inequalities_ok && tv <= separation(p, pi) + 1e-12 &&
                      tv <= 0.5 * std::sqrt(chi_square(p, pi)) + 1e-12;
  }

  r.pass = worst_identity < bands::kChiSquareIdentityTol && worst_mass < bands::kMassTol &&
           inequalities_ok;
  r.detail = fmt("chi-square identity residual %.1e (max 1e-8); mass error %.1e (max 1e-12); "
                 "distance inequalities on 1000 pairs: %s",
                 worst_identity, worst_mass, inequalities_ok ? "ok" : "violated");
  return r;
}

}  // namespace

const std::vector<Criterion>& acceptance_table() {
  static const std::vector<Criterion> table{
      {"AC-1", "path walk mixes diffusively (t ~ n^2)", ac1_path_scaling},
      {"AC-2", "disc walk scales with diameter^2; table chain reaches uniform",
       ac2_lattice_and_tables},
      {"AC-3", "deterministic doubling mixes in O(log p); plain walk does not", ac3_doubling},
      {"AC-4", "direction lifting mixes in O(n) vs O(n^2), doubly stochastic",
       ac4_lifted_vs_path},
      {"AC-5", "reversal-rate sweep: grid argmax beats the 1/n default", ac5_gap_grid},
      {"AC-6", "systematic and random scans both fix the Mallows law, comparable cost",
       ac6_scans},
      {"AC-7", "riffle closed form: 7 shuffles at n=52, matches dense convolution", ac7_riffle},
      {"AC-8", "cutting never increases distance and does not change riffle rates", ac8_cuts},
      {"AC-9", "random transpositions: (1/2) n log n + cn bound holds at n=7",
       ac9_transpositions},
      {"AC-10", "flip walks: basis equivalence, transform oracle, mixing threshold",
       ac10_hypercube},
      {"AC-11", "shuffle statistics: adjacency null mean 2, LIS extremes", ac11_statistics},
      {"AC-12", "engine: chi-square spectral identity, mass conservation, inequalities",
       ac12_engine},
  };
  return table;
}

bool acceptance_has_claim(const std::string& id) {
  for (const auto& criterion : acceptance_table()) {
    if (criterion.id == id) return true;
  }
  return false;
}

std::vector<CriterionResult> run_acceptance(std::ostream& log,
                                            const std::vector<std::string>& only) {
  std::vector<CriterionResult> results;
  for (const auto& criterion : acceptance_table()) {
    if (!only.empty() && std::find(only.begin(), only.end(), criterion.id) == only.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result = criterion.run();
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    log << result.id << (result.pass ? " PASS " : " FAIL ") << criterion.title << " -- "
        << result.detail << fmt(" [%.1fs]", result.seconds) << '\n';
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace mixlab
