#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mixlab/measures.hpp"

namespace mixlab {

struct KernelEntry {
  std::uint32_t target;
  double prob;
};

/// Row-stochastic transition operator with sparse rows.
/// Rows sum to 1 within kRowTolerance; evolution never materializes powers.
class Kernel {
 public:
  static constexpr double kRowTolerance = 1e-12;
  static constexpr double kStationaryTolerance = 1e-10;

  Kernel(std::size_t m, std::vector<std::vector<KernelEntry>> rows, std::string label);

  static Kernel identity(std::size_t m);

  std::size_t size() const { return rows_.size(); }
  const std::vector<std::vector<KernelEntry>>& rows() const { return rows_; }
  const std::string& label() const { return label_; }

  /// One step: distribution times kernel (row vector convention).
  Dist apply(const Dist& p) const;

  /// Probability of the i -> j transition (0 if absent from the sparse row).
  double entry(std::size_t i, std::size_t j) const;

  /// Dense row-major copy, guarded by `cap` (spectral work is desk-scale only).
  std::vector<double> to_dense(std::size_t cap = 4096) const;

 private:
  std::vector<std::vector<KernelEntry>> rows_;
  std::string label_;
};

/// start left-multiplied by the kernel `steps` times. Mass is preserved to
/// machine precision; no Monte Carlo anywhere.
Dist evolve(const Kernel& k, const Dist& start, std::int64_t steps);

/// Max-norm residual of pi K = pi.
double stationarity_residual(const Kernel& k, const Dist& pi);
bool is_stationary(const Kernel& k, const Dist& pi,
                   double tol = Kernel::kStationaryTolerance);

/// Max residual of detailed balance pi_i K(i,j) = pi_j K(j,i).
double reversibility_residual(const Kernel& k, const Dist& pi);
bool is_reversible(const Kernel& k, const Dist& pi,
                   double tol = Kernel::kStationaryTolerance);

/// Distance-versus-step curve for one chain and one metric.
struct TVProfile {
  std::vector<std::int64_t> steps;
  std::vector<double> values;
  Metric metric = Metric::tv;
  std::string label;

  /// CSV with columns: step,value,metric,chain-label
  void write_csv(std::ostream& out) const;
};

/// Distance from evolve(k, start, l) to pi for l = 0..max_steps.
/// Throws if pi is not stationary for k within 1e-10.
TVProfile tv_profile(const Kernel& k, const Dist& start, const Dist& pi,
                     std::int64_t max_steps, Metric metric = Metric::tv);

/// Least recorded step with value <= eps; nullopt if never reached.
std::optional<std::int64_t> mixing_time(const TVProfile& profile, double eps);

/// First step l <= max_steps with distance(evolve(k,start,l), pi) <= eps,
/// computed incrementally (no full profile stored). Stationarity is checked.
std::optional<std::int64_t> find_mixing_time(const Kernel& k, const Dist& start,
                                             const Dist& pi, double eps,
                                             std::int64_t max_steps,
                                             Metric metric = Metric::tv);

}  // namespace mixlab
