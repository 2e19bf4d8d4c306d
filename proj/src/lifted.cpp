#include "mixlab/lifted.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mixlab/grid_walks.hpp"
#include "mixlab/spectral.hpp"

namespace mixlab {

Kernel dhn_kernel(const LiftedSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 2) throw std::invalid_argument("lifted walk needs at least 2 positions");
  const double r = spec.effective_reversal();
  if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("reversal must be in (0, 1]");

  // Mixture of three permutations of the lifted space: the conveyor cycle C
  // (advance, turning around at the ends), the direction flip F, and the
  // identity. K = (1-r) C + (r/2) F + (r/2) I. Columns sum to 1 exactly, and
  // the holding loop keeps the chain aperiodic (C and F alone alternate the
  // parity of position+direction every step, which would pin |lambda_2| = 1).
  const auto up = [](std::size_t i) { return static_cast<std::uint32_t>(i); };
  const auto down = [n](std::size_t i) { return static_cast<std::uint32_t>(n + i); };
  const double move = 1.0 - r;
  const double half = r / 2.0;

  std::vector<std::vector<KernelEntry>> rows(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n) {
      if (move > 0.0) rows[up(i)].push_back({up(i + 1), move});
      rows[up(i)].push_back({down(i), half});
      rows[up(i)].push_back({up(i), half});
    } else {
      rows[up(i)].push_back({down(i), move + half});  // conveyor turn plus flip
      rows[up(i)].push_back({up(i), half});
    }
    if (i > 0) {
      if (move > 0.0) rows[down(i)].push_back({down(i - 1), move});
      rows[down(i)].push_back({up(i), half});
      rows[down(i)].push_back({down(i), half});
    } else {
      rows[down(i)].push_back({up(i), move + half});
      rows[down(i)].push_back({down(i), half});
    }
  }
  char label[64];
  std::snprintf(label, sizeof(label), "dhn-%zu-r%.6g", n, r);
  return Kernel(2 * n, std::move(rows), label);
}

Dist position_marginal(const Dist& lifted) {
  if (lifted.size() % 2 != 0) throw std::invalid_argument("lifted law must have 2n states");
  const std::size_t n = lifted.size() / 2;
  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) w[i] = lifted[i] + lifted[n + i];
  return unchecked_dist(std::move(w));
}

TVProfile dhn_position_profile(const LiftedSpec& spec, std::int64_t max_steps) {
  if (max_steps < 0) throw std::invalid_argument("negative step count");
  const Kernel k = dhn_kernel(spec);
  const Dist uniform_positions = Dist::uniform(spec.n);
  TVProfile profile;
  profile.metric = Metric::tv;
  profile.label = k.label();
  Dist current = Dist::point_mass(2 * spec.n, 0);  // (0, +)
  for (std::int64_t l = 0; l <= max_steps; ++l) {
    if (l > 0) current = k.apply(current);
    profile.steps.push_back(l);
    profile.values.push_back(tv_distance(position_marginal(current), uniform_positions));
  }
  return profile;
}

std::optional<std::int64_t> dhn_position_mixing_time(const LiftedSpec& spec, double eps,
                                                     std::int64_t max_steps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0, 1)");
  const Kernel k = dhn_kernel(spec);
  const Dist uniform_positions = Dist::uniform(spec.n);
  Dist current = Dist::point_mass(2 * spec.n, 0);
  for (std::int64_t l = 0; l <= max_steps; ++l) {
    if (l > 0) current = k.apply(current);
    if (tv_distance(position_marginal(current), uniform_positions) <= eps) return l;
  }
  return std::nullopt;
}

std::vector<LiftedRow> lifted_vs_diffusive(const std::vector<std::size_t>& ns, double eps) {
  std::vector<LiftedRow> rows;
  rows.reserve(ns.size());
  for (std::size_t n : ns) {
    if (n > 4096) throw std::invalid_argument("walk size capped at 4096");
    const auto lifted_t =
        dhn_position_mixing_time(LiftedSpec{n, 0.0}, eps, static_cast<std::int64_t>(200 * n));
    const Kernel path = path_kernel(n);
    const auto path_t = find_mixing_time(path, Dist::point_mass(n, 0), Dist::uniform(n), eps,
                                         static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n) * 20);
    if (!lifted_t || !path_t) {
      throw std::runtime_error("mixing time not reached within the step budget");
    }
    rows.push_back({n, *lifted_t, *path_t});
  }
  return rows;
}

GapCurve gap_vs_theta(std::size_t n, const std::vector<double>& thetas) {
  if (thetas.empty()) throw std::invalid_argument("empty theta grid");
  if (n > 2048) throw std::invalid_argument("gap sweep capped at n = 2048");
  GapCurve curve;
  curve.points.reserve(thetas.size());
  for (double theta : thetas) {
    const double r = theta / static_cast<double>(n);
    if (!(r > 0.0 && r <= 1.0)) {
      throw std::invalid_argument("theta/n must lie in (0, 1]");
    }
    const double gap = spectral_gap(dhn_kernel(LiftedSpec{n, r}));
    curve.points.push_back({theta, gap});
  }
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    if (curve.points[i].gap > curve.points[curve.argmax].gap) curve.argmax = i;
  }
  return curve;
}

std::vector<double> theta_grid(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) throw std::invalid_argument("bad grid bounds");
  std::vector<double> grid;
  for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
  return grid;
}

}  // namespace mixlab
