#include "mixlab/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mixlab {

namespace {

void check_same_size(const Dist& p, const Dist& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("distributions have different state counts: " +
                                std::to_string(p.size()) + " vs " +
                                std::to_string(q.size()));
  }
}

void check_positive(const Dist& pi) {
  for (std::size_t j = 0; j < pi.size(); ++j) {
    if (pi[j] <= 0.0) {
      throw std::domain_error("reference distribution must be strictly positive (state " +
                              std::to_string(j) + " is not)");
    }
  }
}

}  // namespace

Dist::Dist(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("empty distribution");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("negative or NaN weight in distribution");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kMassTolerance) {
    throw std::invalid_argument("distribution mass is " + std::to_string(sum) +
                                ", not 1 within 1e-12");
  }
}

Dist Dist::uniform(std::size_t m) {
  if (m == 0) throw std::invalid_argument("empty distribution");
  return Dist(std::vector<double>(m, 1.0 / static_cast<double>(m)), Unchecked{});
}

Dist Dist::point_mass(std::size_t m, std::size_t i) {
  if (i >= m) throw std::out_of_range("point mass index out of range");
  std::vector<double> w(m, 0.0);
  w[i] = 1.0;
  return Dist(std::move(w), Unchecked{});
}

Dist Dist::normalized(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("negative or NaN weight");
    sum += w;
  }
  if (sum <= 0.0) throw std::invalid_argument("cannot normalize zero mass");
  for (double& w : weights) w /= sum;
  return Dist(std::move(weights), Unchecked{});
}

double Dist::total_mass() const {
  double sum = 0.0;
  for (double w : weights_) sum += w;
  return sum;
}

Dist unchecked_dist(std::vector<double> weights) {
  return Dist(std::move(weights), Dist::Unchecked{});
}

double tv_distance(const Dist& p, const Dist& q) {
  check_same_size(p, q);
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) sum += std::abs(p[j] - q[j]);
  return 0.5 * sum;
}

double chi_square(const Dist& p, const Dist& pi) {
  check_same_size(p, pi);
  check_positive(pi);
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double d = p[j] - pi[j];
    sum += d * d / pi[j];
  }
  return sum;
}

double separation(const Dist& p, const Dist& pi) {
  check_same_size(p, pi);
  check_positive(pi);
  double worst = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    worst = std::max(worst, 1.0 - p[j] / pi[j]);
  }
  return std::min(worst, 1.0);
}

double linf_distance(const Dist& p, const Dist& pi) {
  check_same_size(p, pi);
  check_positive(pi);
  double worst = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    worst = std::max(worst, std::abs(1.0 - p[j] / pi[j]));
  }
  return worst;
}

double kl_divergence(const Dist& pi, const Dist& p) {
  check_same_size(pi, p);
  check_positive(pi);
  double sum = 0.0;
  for (std::size_t j = 0; j < pi.size(); ++j) {
    if (p[j] <= 0.0) return std::numeric_limits<double>::infinity();
    sum += pi[j] * std::log(pi[j] / p[j]);
  }
  return std::max(sum, 0.0);
}

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::tv: return "tv";
    case Metric::chi_square: return "chi-square";
    case Metric::separation: return "separation";
    case Metric::linf: return "linf";
    case Metric::kl: return "kl";
  }
  throw std::logic_error("unreachable");
}

Metric metric_from_name(const std::string& name) {
  if (name == "tv") return Metric::tv;
  if (name == "chi-square" || name == "chi2") return Metric::chi_square;
  if (name == "separation") return Metric::separation;
  if (name == "linf") return Metric::linf;
  if (name == "kl") return Metric::kl;
  throw std::invalid_argument("unknown metric: " + name);
}

double distance(Metric metric, const Dist& p, const Dist& pi) {
  switch (metric) {
    case Metric::tv: return tv_distance(p, pi);
    case Metric::chi_square: return chi_square(p, pi);
    case Metric::separation: return separation(p, pi);
    case Metric::linf: return linf_distance(p, pi);
    case Metric::kl: return kl_divergence(pi, p);
  }
  throw std::logic_error("unreachable");
}

}  // namespace mixlab
