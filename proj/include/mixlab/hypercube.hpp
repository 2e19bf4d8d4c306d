#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mixlab/kernel.hpp"
#include "mixlab/rng.hpp"

namespace mixlab {

/// Step generators for a walk on C_2^n: add a uniformly chosen V_i (bitmask),
/// optionally with an identity move mixed in (uniform over identity plus the
/// N vectors). n is capped at 30 so exact transforms stay addressable.
struct GeneratorSet {
  int n = 0;
  std::vector<std::uint32_t> vectors;
  bool holding = true;

  std::size_t move_count() const { return vectors.size() + (holding ? 1 : 0); }
  void validate() const;
};

constexpr int kMaxTransformBits = 30;

/// The n cyclic shifts of the weight-d contiguous block 0..d-1.
GeneratorSet spatula_generators(int n, int d, bool holding = true);

/// The n cyclic shifts of an arbitrary flip pattern.
GeneratorSet comb_generators(int n, std::uint32_t pattern, bool holding = true);

/// N vectors drawn uniformly from C_2^n (no holding move).
GeneratorSet random_generators(int n, int count, Rng& rng);

/// Rank over GF(2) of the given bitmask vectors.
int gf2_rank(std::span<const std::uint32_t> vectors, int n);

/// True iff the vectors span C_2^n (exactly n of them independent).
bool gf2_basis_check(const GeneratorSet& g);

/// In-place Walsh-Hadamard transform; data.size() must be a power of two.
/// Self-inverse up to the factor data.size().
void fwht(std::span<double> data);

/// Character spectrum of the step measure: lambda_x = sum_i w_i (-1)^{x.V_i}.
std::vector<double> walsh_spectrum(const GeneratorSet& g);

/// Exact TV between the k-step law from 0 and uniform, via the transform:
/// spectrum -> k-th powers -> inverse transform. O(n 2^n) total.
/// Throws if the generators do not span (rank < n).
double hypercube_tv(const GeneratorSet& g, std::int64_t k);

/// TV at every k in 0..max_steps (one spectrum, reused).
std::vector<double> hypercube_tv_profile(const GeneratorSet& g, std::int64_t max_steps);

std::optional<std::int64_t> hypercube_mixing_time(const GeneratorSet& g, double eps,
                                                  std::int64_t max_steps);

/// Dense 2^n-state kernel of the same walk (oracle-sized n only).
Kernel hypercube_kernel(const GeneratorSet& g, std::size_t cap = 4096);

struct BasisEquivalenceRow {
  int d = 0;
  bool gcd_ok = false;
  bool basis_ok = false;
  double max_deviation = 0.0;  // vs. the d=1 walk, over k <= max_steps
};

/// Compares each eligible spatula walk's TV profile against the d=1 walk.
/// Eligible: gcd(d, n) = 1 and the shifts form a basis. Profiles of eligible
/// d must agree pointwise (the walks are linear images of one another).
std::vector<BasisEquivalenceRow> basis_equivalence_check(int n, const std::vector<int>& ds,
                                                         std::int64_t max_steps);

/// H(x) = x log2(1/x) + (1-x) log2(1/(1-x)) on [0, 1].
double binary_entropy(double x);

/// Inverse of H restricted to [0, 1/2], by bisection to 1e-12.
double binary_entropy_inverse(double y);

/// Step threshold for mixing with N random generators on C_2^n:
/// T(n, N) = (N/2) ln(1/(1 - 2 H^{-1}(n/N))). At N = 2n, T = 0.24853 n.
double wilson_threshold(int n, int N);

struct WilsonTrial {
  int trial = 0;
  bool ergodic = false;
  bool aperiodic = false;
  std::optional<std::int64_t> tmix;  // t_mix(1/4), when defined
  double ratio = 0.0;                // tmix / T(n, N)
};

struct WilsonReport {
  int n = 0;
  int count = 0;  // N
  double threshold = 0.0;
  std::vector<WilsonTrial> trials;
  int excluded_rank = 0;      // rank < n
  int excluded_periodic = 0;  // some lambda_x = -1
  double median_ratio = 0.0;  // over included trials
};

/// Samples `trials` random generator sets and measures t_mix(1/4) for each
/// ergodic, aperiodic one.
WilsonReport wilson_experiment(int n, int count, int trials, std::uint64_t seed);

}  // namespace mixlab
