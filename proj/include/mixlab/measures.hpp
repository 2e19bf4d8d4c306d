#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mixlab {

/// Dense probability vector over an explicitly indexed finite state space.
/// Weights are non-negative and sum to 1 within kMassTolerance.
class Dist {
 public:
  static constexpr double kMassTolerance = 1e-12;

  /// Validates non-negativity and total mass.
  explicit Dist(std::vector<double> weights);

  static Dist uniform(std::size_t m);
  static Dist point_mass(std::size_t m, std::size_t i);
  /// Rescales arbitrary non-negative weights to total mass 1.
  static Dist normalized(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

  double total_mass() const;

 private:
  struct Unchecked {};
  Dist(std::vector<double> weights, Unchecked) : weights_(std::move(weights)) {}

  std::vector<double> weights_;

  friend class Kernel;
  friend Dist unchecked_dist(std::vector<double>);
};

/// Internal fast path for vectors already known to be a distribution
/// (exact evolution preserves mass; revalidating every step is wasted work).
Dist unchecked_dist(std::vector<double> weights);

/// Half the l1 distance. Symmetric, in [0, 1].
double tv_distance(const Dist& p, const Dist& q);

/// Sum over states of (p_j - pi_j)^2 / pi_j. Requires pi > 0 everywhere.
double chi_square(const Dist& p, const Dist& pi);

/// max_j (1 - p_j/pi_j), clipped to [0, 1]. Requires pi > 0 everywhere.
double separation(const Dist& p, const Dist& pi);

/// max_j |1 - p_j/pi_j|. Requires pi > 0 everywhere.
double linf_distance(const Dist& p, const Dist& pi);

/// D(pi || p) = sum pi_j log(pi_j / p_j), >= 0.
/// Returns +inf when p_j = 0 at some state with pi_j > 0.
double kl_divergence(const Dist& pi, const Dist& p);

enum class Metric { tv, chi_square, separation, linf, kl };

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

/// Distance from p to the reference distribution pi under the given metric.
double distance(Metric metric, const Dist& p, const Dist& pi);

}  // namespace mixlab
