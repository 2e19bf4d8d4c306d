#include "mixlab/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace mixlab {

Kernel::Kernel(std::size_t m, std::vector<std::vector<KernelEntry>> rows, std::string label)
    : rows_(std::move(rows)), label_(std::move(label)) {
  if (rows_.size() != m || m == 0) {
    throw std::invalid_argument("kernel row count does not match state count");
  }
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (const auto& e : rows_[i]) {
      if (e.target >= m) {
        throw std::invalid_argument("kernel row " + std::to_string(i) +
                                    " targets out-of-range state");
      }
      if (!(e.prob >= 0.0)) {
        throw std::invalid_argument("kernel row " + std::to_string(i) +
                                    " has a negative or NaN probability");
      }
      sum += e.prob;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
      throw std::invalid_argument("kernel row " + std::to_string(i) + " sums to " +
                                  std::to_string(sum) + ", not 1 within 1e-12");
    }
  }
}

Kernel Kernel::identity(std::size_t m) {
  std::vector<std::vector<KernelEntry>> rows(m);
  for (std::size_t i = 0; i < m; ++i) {
    rows[i].push_back({static_cast<std::uint32_t>(i), 1.0});
  }
  return Kernel(m, std::move(rows), "identity");
}

Dist Kernel::apply(const Dist& p) const {
  if (p.size() != size()) {
    throw std::invalid_argument("distribution/kernel dimension mismatch");
  }
  std::vector<double> out(size(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    const double mass = p[i];
    if (mass == 0.0) continue;
    for (const auto& e : rows_[i]) out[e.target] += mass * e.prob;
  }
  return unchecked_dist(std::move(out));
}

double Kernel::entry(std::size_t i, std::size_t j) const {
  double sum = 0.0;
  for (const auto& e : rows_[i]) {
    if (e.target == j) sum += e.prob;
  }
  return sum;
}

std::vector<double> Kernel::to_dense(std::size_t cap) const {
  const std::size_t m = size();
  if (m > cap) {
    throw std::length_error("kernel too large for dense work: " + std::to_string(m) +
                            " states exceeds cap " + std::to_string(cap));
  }
  std::vector<double> dense(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& e : rows_[i]) dense[i * m + e.target] += e.prob;
  }
  return dense;
}

Dist evolve(const Kernel& k, const Dist& start, std::int64_t steps) {
  if (steps < 0) throw std::invalid_argument("negative step count");
  Dist current = start;
  for (std::int64_t l = 0; l < steps; ++l) current = k.apply(current);
  return current;
}

double stationarity_residual(const Kernel& k, const Dist& pi) {
  const Dist next = k.apply(pi);
  double worst = 0.0;
  for (std::size_t j = 0; j < pi.size(); ++j) {
    worst = std::max(worst, std::abs(next[j] - pi[j]));
  }
  return worst;
}

bool is_stationary(const Kernel& k, const Dist& pi, double tol) {
  return pi.size() == k.size() && stationarity_residual(k, pi) <= tol;
}

double reversibility_residual(const Kernel& k, const Dist& pi) {
  if (pi.size() != k.size()) {
    throw std::invalid_argument("distribution/kernel dimension mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (const auto& e : k.rows()[i]) {
      const double forward = pi[i] * e.prob;
      const double backward = pi[e.target] * k.entry(e.target, i);
      worst = std::max(worst, std::abs(forward - backward));
    }
  }
  return worst;
}

bool is_reversible(const Kernel& k, const Dist& pi, double tol) {
  return reversibility_residual(k, pi) <= tol;
}

void TVProfile::write_csv(std::ostream& out) const {
  out << "step,value,metric,chain-label\n";
  char buf[64];
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", values[i]);
    out << steps[i] << ',' << buf << ',' << metric_name(metric) << ',' << label << '\n';
  }
}

TVProfile tv_profile(const Kernel& k, const Dist& start, const Dist& pi,
                     std::int64_t max_steps, Metric metric) {
  if (max_steps < 0) throw std::invalid_argument("negative step count");
  if (!is_stationary(k, pi)) {
    throw std::invalid_argument("reference distribution is not stationary for kernel '" +
                                k.label() + "' within 1e-10");
  }
  TVProfile profile;
  profile.metric = metric;
  profile.label = k.label();
  profile.steps.reserve(static_cast<std::size_t>(max_steps) + 1);
  profile.values.reserve(static_cast<std::size_t>(max_steps) + 1);
  Dist current = start;
  for (std::int64_t l = 0; l <= max_steps; ++l) {
    if (l > 0) current = k.apply(current);
    profile.steps.push_back(l);
    profile.values.push_back(distance(metric, current, pi));
  }
  return profile;
}

std::optional<std::int64_t> mixing_time(const TVProfile& profile, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0, 1)");
  for (std::size_t i = 0; i < profile.steps.size(); ++i) {
    if (profile.values[i] <= eps) return profile.steps[i];
  }
  return std::nullopt;
}

std::optional<std::int64_t> find_mixing_time(const Kernel& k, const Dist& start,
                                             const Dist& pi, double eps,
                                             std::int64_t max_steps, Metric metric) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0, 1)");
  if (!is_stationary(k, pi)) {
    throw std::invalid_argument("reference distribution is not stationary for kernel '" +
                                k.label() + "' within 1e-10");
  }
  Dist current = start;
  for (std::int64_t l = 0; l <= max_steps; ++l) {
    if (l > 0) current = k.apply(current);
    if (distance(metric, current, pi) <= eps) return l;
  }
  return std::nullopt;
}

}  // namespace mixlab
