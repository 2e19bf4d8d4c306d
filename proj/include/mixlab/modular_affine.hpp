#pragma once

#include <cstdint>
#include <vector>

#include "mixlab/kernel.hpp"
#include "mixlab/measures.hpp"

namespace mixlab {

/// The walk X_{t+1} = a X_t + eps (mod p), started from X_0 = 0.
/// Multipliers may be random per step (annealed law); every multiplier must
/// be invertible mod p. Increments default to {0, +1, -1} each 1/3.
struct AffineWalkSpec {
  std::int64_t modulus = 3;                                   // odd, >= 3
  std::vector<std::pair<std::int64_t, double>> multipliers;   // (a, prob)
  std::vector<std::pair<std::int64_t, double>> increments;    // (eps, prob)

  static AffineWalkSpec doubling(std::int64_t p);
  static AffineWalkSpec plain(std::int64_t p);  // a = 1
  /// Uniform over the given multipliers.
  static AffineWalkSpec random_multiplier(std::int64_t p, std::vector<std::int64_t> as);

  void validate() const;
};

std::int64_t mod_inverse(std::int64_t a, std::int64_t p);

/// Exact law of X_steps, by the O(p)-per-step pullback update. For random
/// multipliers this is the annealed law (averaged over each step's choice).
Dist affine_evolve(const AffineWalkSpec& spec, std::int64_t steps);

/// Law along one multiplier trajectory drawn from `seed` (quenched run).
Dist affine_evolve_quenched(const AffineWalkSpec& spec, std::int64_t steps,
                            std::uint64_t seed);

/// Dense kernel of the (annealed) walk; oracle-sized moduli only.
Kernel affine_kernel(const AffineWalkSpec& spec, std::size_t cap = 4096);

/// TV to uniform after each of 0..max_steps steps.
TVProfile affine_tv_profile(const AffineWalkSpec& spec, std::int64_t max_steps);

/// C* = (1 - log2((5 + sqrt(17))/9))^{-1} = 1.01999186...
double cdg_constant();

struct DoublingRow {
  std::int64_t p;
  std::int64_t steps;
  double tv_doubling;
  double tv_plain;
};

/// For each modulus: TV of the doubling walk at ceil(step_factor * log2 p),
/// and TV of the plain (a = 1) walk at the same step.
std::vector<DoublingRow> doubling_speedup_experiment(const std::vector<std::int64_t>& ps,
                                                     double step_factor);

/// Spec form: step factor C* + eps. Callers compare tv_doubling against eps.
std::vector<DoublingRow> doubling_speedup_experiment_eps(const std::vector<std::int64_t>& ps,
                                                         double eps);

/// Fraction of rows with tv_doubling < threshold.
double doubling_pass_fraction(const std::vector<DoublingRow>& rows, double threshold);

}  // namespace mixlab
