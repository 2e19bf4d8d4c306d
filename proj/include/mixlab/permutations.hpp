#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mixlab/kernel.hpp"
#include "mixlab/measures.hpp"

namespace mixlab {

/// One-line notation, 0-based values; perm[i] is the image of i.
using Perm = std::vector<int>;

std::int64_t factorial(int n);

bool is_permutation(const Perm& sigma);
Perm identity_perm(int n);

/// Lehmer-code rank: identity has rank 0, order is lexicographic in
/// one-line notation. Inverse of perm_unrank.
std::int64_t perm_rank(const Perm& sigma);
Perm perm_unrank(int n, std::int64_t r);

/// Function composition a after b: (a o b)(i) = a(b(i)).
Perm compose(const Perm& a, const Perm& b);
Perm inverse_perm(const Perm& sigma);

/// Number of pairs i < j with sigma(i) > sigma(j).
int inversions(const Perm& sigma);

/// Cycle lengths, sorted descending (conjugacy-class label).
std::vector<int> cycle_type(const Perm& sigma);

/// Probability measure on S_n, dense over all n! permutations by Lehmer rank.
class GroupMeasure {
 public:
  static constexpr int kMaxDenseN = 8;

  GroupMeasure(int n, std::vector<double> weights);

  static GroupMeasure uniform(int n);
  static GroupMeasure point_mass(int n, const Perm& sigma);

  int n() const { return n_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t r) const { return weights_[r]; }
  const std::vector<double>& weights() const { return weights_; }
  Dist dist() const { return Dist(weights_); }

 private:
  int n_;
  std::vector<double> weights_;
};

/// (q * r)(x) = sum_eta q(eta) r(x eta^{-1}); delta_s * delta_t = delta_{ts}.
GroupMeasure convolve(const GroupMeasure& q, const GroupMeasure& r);

/// q^{*k}, iterated with action tables precomputed over q's support.
GroupMeasure convolve_power(const GroupMeasure& q, std::int64_t k);

double tv_to_uniform(const GroupMeasure& q);

/// TV(q^{*k}, U) for k = 0..max_steps.
std::vector<double> convolution_tv_profile(const GroupMeasure& q, std::int64_t max_steps);

/// Mass 1/n on each of the n cyclic rotations (a random straight cut).
GroupMeasure cut_measure(int n);

/// Choose two positions uniformly and independently and swap them:
/// mass 1/n on the identity, 2/n^2 on each transposition.
GroupMeasure random_transpositions_measure(int n);

/// Mass 1/2 on the adjacent transposition of the top two cards, 1/2 on the
/// cycle cutting the top card to the bottom. Parity-periodic for even n.
GroupMeasure top_swap_or_cut_measure(int n);

/// One Gilbert-Shannon-Reeds riffle: binomial(n, 1/2) cut, then a uniformly
/// chosen interleaving of the two packets.
GroupMeasure gsr_measure(int n);

/// Exact TV between k GSR riffles of n cards and uniform, via the 2^k-shuffle
/// closed form over rising-sequence counts, in exact big-rational arithmetic.
double riffle_tv_exact(int n, int k);

struct FulmanRow {
  std::int64_t k;
  double tv_plain;  // TV(Q^{*k}, U)
  double tv_cut;    // TV(C * Q^{*k}, U)
};

/// Riffle profile with and without a final cut, k = 0..max_steps.
std::vector<FulmanRow> fulman_cut_check(int n, std::int64_t max_steps);

/// Normalizer z(theta) = prod_{i=1..n} (1 + theta + ... + theta^{i-1}).
double mallows_normalizer(int n, double theta);

/// P_theta(sigma) proportional to theta^{inversions(sigma)}, 0 < theta <= 1.
GroupMeasure mallows_distribution(int n, double theta);

enum class ScanMode { systematic, random };

/// Adjacent-transposition Metropolis chain for the Mallows law. A systematic
/// step is one full sweep proposing (1,2),(2,3),...,(n-1,n),(n-2,n-1),...,(1,2);
/// a random step proposes one uniformly chosen adjacent pair.
class ScanKernel {
 public:
  ScanKernel(int n, double theta, ScanMode mode);

  int n() const { return n_; }
  double theta() const { return theta_; }
  ScanMode mode() const { return mode_; }

  /// Proposals consumed per step (sweep length for systematic, 1 for random).
  int step_cost() const;

  /// One step of the chain applied to a law over S_n.
  Dist step(const Dist& p) const;

  /// The one-step kernel over n! states (systematic mode materializes the
  /// sweep product; capped since rows fill in quickly).
  Kernel as_kernel(std::size_t cap = 720) const;

  GroupMeasure stationary() const { return mallows_distribution(n_, theta_); }

  std::optional<std::int64_t> mixing_time_from(const Dist& start, double eps,
                                               std::int64_t max_steps) const;

 private:
  int n_;
  double theta_;
  ScanMode mode_;
  std::vector<int> schedule_;    // systematic proposal order (pair indices)
  std::vector<Kernel> factors_;  // Metropolis kernel per adjacent pair
  std::optional<Kernel> random_kernel_;
};

ScanKernel scan_kernel(int n, double theta, ScanMode mode);

/// Number of adjacent positions holding consecutive values:
/// #{i : |sigma(i) - sigma(i+1)| = 1}.
int adjacency_statistic(const Perm& sigma);

/// Length of the longest (strictly) increasing subsequence, by patience
/// sorting in O(n log n).
int lis_length(const Perm& sigma);

enum class Statistic { adjacency, lis };

Statistic statistic_from_name(const std::string& name);
std::string statistic_name(Statistic s);
int evaluate_statistic(Statistic s, const Perm& sigma);

struct NullDistribution {
  std::map<int, std::int64_t> counts;
  std::int64_t samples = 0;
  double mean = 0.0;
};

/// Monte Carlo null of a statistic under uniform permutations
/// (seeded Fisher-Yates; exact-distribution work stays out of this one op).
NullDistribution null_distribution(Statistic stat, int n, std::int64_t samples,
                                   std::uint64_t seed);

/// One permutation per line, one-line notation, 1-based, comma-separated.
std::vector<Perm> read_permutations(std::istream& in);

}  // namespace mixlab
