#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mixlab/kernel.hpp"
#include "mixlab/measures.hpp"

namespace mixlab {

/// Direction-lifted walk on {0..n-1} x {+,-}: keep moving in the current
/// direction with probability 1 - reversal; otherwise reconsider, flipping
/// the direction or holding (reversal/2 each). The ends turn the walk
/// around. Nonreversible for n >= 3 but doubly stochastic, so the position
/// marginal is uniform in equilibrium; the holding loop keeps it aperiodic.
struct LiftedSpec {
  std::size_t n = 2;
  double reversal = 0.0;  // 0 means the default 1/n

  double effective_reversal() const {
    return reversal > 0.0 ? reversal : 1.0 / static_cast<double>(n);
  }
};

/// State layout: index i in 0..n-1 is (i, +), index n + i is (i, -).
Kernel dhn_kernel(const LiftedSpec& spec);

/// Position marginal of a law over the 2n lifted states.
Dist position_marginal(const Dist& lifted);

/// TV between the position marginal of the k-step law from (0, +) and
/// uniform on positions, for k = 0..max_steps.
TVProfile dhn_position_profile(const LiftedSpec& spec, std::int64_t max_steps);

std::optional<std::int64_t> dhn_position_mixing_time(const LiftedSpec& spec, double eps,
                                                     std::int64_t max_steps);

struct LiftedRow {
  std::size_t n;
  std::int64_t tmix_lifted;
  std::int64_t tmix_path;
};

/// t_mix(eps) of the lifted walk's position marginal vs. the plain path walk,
/// both from position 0.
std::vector<LiftedRow> lifted_vs_diffusive(const std::vector<std::size_t>& ns,
                                           double eps = 0.25);

struct GapPoint {
  double theta;
  double gap;
};

struct GapCurve {
  std::vector<GapPoint> points;
  std::size_t argmax = 0;
};

/// Spectral gap of the lifted kernel with reversal theta/n over a theta grid.
GapCurve gap_vs_theta(std::size_t n, const std::vector<double>& thetas);

/// Inclusive grid start:stop:step.
std::vector<double> theta_grid(double start, double stop, double step);

}  // namespace mixlab
