#include "mixlab/permutations.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mixlab/rng.hpp"

namespace mixlab {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

std::vector<std::int64_t> collect_support(const GroupMeasure& q) {
  std::vector<std::int64_t> support;
  for (std::size_t r = 0; r < q.size(); ++r) {
    if (q[r] != 0.0) support.push_back(static_cast<std::int64_t>(r));
  }
  return support;
}

// Rank-to-rank action table of right translation by eta: r -> rank(unrank(r) o eta).
std::vector<std::uint32_t> action_table(int n, const Perm& eta) {
  const auto size = static_cast<std::size_t>(factorial(n));
  std::vector<std::uint32_t> table(size);
  for (std::size_t r = 0; r < size; ++r) {
    const Perm rho = perm_unrank(n, static_cast<std::int64_t>(r));
    table[r] = static_cast<std::uint32_t>(perm_rank(compose(rho, eta)));
  }
  return table;
}

// Eulerian numbers by descent count: counts[d] = #permutations of n with d descents.
std::vector<BigInt> eulerian_numbers(int n) {
  std::vector<BigInt> row{1};  // n = 1
  for (int m = 2; m <= n; ++m) {
    std::vector<BigInt> next(static_cast<std::size_t>(m), 0);
    for (int d = 0; d < m; ++d) {
      BigInt value = 0;
      if (d < m - 1) value += BigInt(d + 1) * row[static_cast<std::size_t>(d)];
      if (d >= 1) value += BigInt(m - d) * row[static_cast<std::size_t>(d - 1)];
      next[static_cast<std::size_t>(d)] = value;
    }
    row = std::move(next);
  }
  return row;
}

BigInt binomial_big(const BigInt& top, int k) {
  if (top < k) return 0;
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= top - (k - i);
    result /= i;
  }
  return result;
}

BigInt factorial_big(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::int64_t factorial(int n) {
  if (n < 0 || n > 20) throw std::invalid_argument("factorial argument out of range");
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

bool is_permutation(const Perm& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<char> seen(sigma.size(), 0);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

Perm identity_perm(int n) {
  Perm sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  return sigma;
}

std::int64_t perm_rank(const Perm& sigma) {
  if (!is_permutation(sigma)) throw std::invalid_argument("malformed permutation");
  const int n = static_cast<int>(sigma.size());
  std::int64_t r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller_later = 0;
    for (int j = i + 1; j < n; ++j) {
      if (sigma[static_cast<std::size_t>(j)] < sigma[static_cast<std::size_t>(i)]) {
        ++smaller_later;
      }
    }
    r = r * (n - i) + smaller_later;
  }
  return r;
}

Perm perm_unrank(int n, std::int64_t r) {
  if (n < 0 || r < 0 || r >= factorial(n)) throw std::out_of_range("rank out of range");
  std::vector<int> code(static_cast<std::size_t>(n), 0);
  for (int i = n - 1; i >= 0; --i) {
    code[static_cast<std::size_t>(i)] = static_cast<int>(r % (n - i));
    r /= (n - i);
  }
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  Perm sigma;
  sigma.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto at = static_cast<std::size_t>(code[static_cast<std::size_t>(i)]);
    sigma.push_back(pool[at]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
  }
  return sigma;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutation size mismatch");
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[static_cast<std::size_t>(b[i])];
  }
  return out;
}

Perm inverse_perm(const Perm& sigma) {
  Perm out(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    out[static_cast<std::size_t>(sigma[i])] = static_cast<int>(i);
  }
  return out;
}

int inversions(const Perm& sigma) {
  if (!is_permutation(sigma)) throw std::invalid_argument("malformed permutation");
  int count = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    for (std::size_t j = i + 1; j < sigma.size(); ++j) {
      if (sigma[i] > sigma[j]) ++count;
    }
  }
  return count;
}

std::vector<int> cycle_type(const Perm& sigma) {
  std::vector<char> seen(sigma.size(), 0);
  std::vector<int> lengths;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = 1;
      ++len;
      j = static_cast<std::size_t>(sigma[j]);
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

GroupMeasure::GroupMeasure(int n, std::vector<double> weights) : n_(n) {
  if (n < 1 || n > kMaxDenseN) {
    throw std::invalid_argument("dense measures support n in 1.." +
                                std::to_string(kMaxDenseN));
  }
  if (weights.size() != static_cast<std::size_t>(factorial(n))) {
    throw std::invalid_argument("weight vector must have n! entries");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("negative or NaN weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > Dist::kMassTolerance) {
    throw std::invalid_argument("measure mass is not 1 within 1e-12");
  }
  weights_ = std::move(weights);
}

GroupMeasure GroupMeasure::uniform(int n) {
  const auto size = static_cast<std::size_t>(factorial(n));
  return GroupMeasure(n, std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

GroupMeasure GroupMeasure::point_mass(int n, const Perm& sigma) {
  const auto size = static_cast<std::size_t>(factorial(n));
  std::vector<double> w(size, 0.0);
  w[static_cast<std::size_t>(perm_rank(sigma))] = 1.0;
  return GroupMeasure(n, std::move(w));
}

GroupMeasure convolve(const GroupMeasure& q, const GroupMeasure& r) {
  if (q.n() != r.n()) throw std::invalid_argument("measures on different groups");
  const int n = q.n();
  std::vector<double> out(q.size(), 0.0);
  for (std::int64_t re : collect_support(q)) {
    const Perm eta = perm_unrank(n, re);
    const double qe = q[static_cast<std::size_t>(re)];
    for (std::size_t rr = 0; rr < r.size(); ++rr) {
      const double w = r[rr];
      if (w == 0.0) continue;
      const Perm rho = perm_unrank(n, static_cast<std::int64_t>(rr));
      out[static_cast<std::size_t>(perm_rank(compose(rho, eta)))] += qe * w;
    }
  }
  return GroupMeasure(n, std::move(out));
}

GroupMeasure convolve_power(const GroupMeasure& q, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("negative convolution power");
  const int n = q.n();
  std::vector<double> current(q.size(), 0.0);
  current[0] = 1.0;  // delta at the identity
  if (k == 0) return GroupMeasure(n, std::move(current));

  const std::vector<std::int64_t> support = collect_support(q);
  std::vector<std::vector<std::uint32_t>> tables;
  std::vector<double> masses;
  tables.reserve(support.size());
  for (std::int64_t re : support) {
    tables.push_back(action_table(n, perm_unrank(n, re)));
    masses.push_back(q[static_cast<std::size_t>(re)]);
  }
  std::vector<double> next(q.size());
  for (std::int64_t step = 0; step < k; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t s = 0; s < tables.size(); ++s) {
      const auto& table = tables[s];
      const double mass = masses[s];
      for (std::size_t r = 0; r < current.size(); ++r) {
        if (current[r] != 0.0) next[table[r]] += mass * current[r];
      }
    }
    current.swap(next);
  }
  return GroupMeasure(n, std::move(current));
}

double tv_to_uniform(const GroupMeasure& q) {
  const double u = 1.0 / static_cast<double>(q.size());
  double sum = 0.0;
  for (double w : q.weights()) sum += std::abs(w - u);
  return 0.5 * sum;
}

std::vector<double> convolution_tv_profile(const GroupMeasure& q, std::int64_t max_steps) {
  if (max_steps < 0) throw std::invalid_argument("negative step count");
  const int n = q.n();
  const std::vector<std::int64_t> support = collect_support(q);
  std::vector<std::vector<std::uint32_t>> tables;
  std::vector<double> masses;
  for (std::int64_t re : support) {
    tables.push_back(action_table(n, perm_unrank(n, re)));
    masses.push_back(q[static_cast<std::size_t>(re)]);
  }
  std::vector<double> current(q.size(), 0.0);
  current[0] = 1.0;
  std::vector<double> next(q.size());
  const double u = 1.0 / static_cast<double>(q.size());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(max_steps) + 1);
  for (std::int64_t k = 0; k <= max_steps; ++k) {
    if (k > 0) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t s = 0; s < tables.size(); ++s) {
        const auto& table = tables[s];
        const double mass = masses[s];
        for (std::size_t r = 0; r < current.size(); ++r) {
          if (current[r] != 0.0) next[table[r]] += mass * current[r];
        }
      }
      current.swap(next);
    }
    double tv = 0.0;
    for (double w : current) tv += std::abs(w - u);
    out.push_back(0.5 * tv);
  }
  return out;
}

GroupMeasure cut_measure(int n) {
  if (n < 2) throw std::invalid_argument("cut measure needs n >= 2");
  const auto size = static_cast<std::size_t>(factorial(n));
  std::vector<double> w(size, 0.0);
  for (int s = 0; s < n; ++s) {
    Perm rotation(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rotation[static_cast<std::size_t>(i)] = (i + s) % n;
    w[static_cast<std::size_t>(perm_rank(rotation))] += 1.0 / static_cast<double>(n);
  }
  return GroupMeasure(n, std::move(w));
}

GroupMeasure random_transpositions_measure(int n) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  const auto size = static_cast<std::size_t>(factorial(n));
  std::vector<double> w(size, 0.0);
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  w[0] = 1.0 / static_cast<double>(n);  // both choices equal
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Perm tau = identity_perm(n);
      std::swap(tau[static_cast<std::size_t>(i)], tau[static_cast<std::size_t>(j)]);
      w[static_cast<std::size_t>(perm_rank(tau))] += 2.0 / nn;
    }
  }
  return GroupMeasure(n, std::move(w));
}

GroupMeasure top_swap_or_cut_measure(int n) {
  if (n < 3) throw std::invalid_argument("need n >= 3");
  const auto size = static_cast<std::size_t>(factorial(n));
  std::vector<double> w(size, 0.0);
  Perm swap_top = identity_perm(n);
  std::swap(swap_top[0], swap_top[1]);
  Perm cut_top(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cut_top[static_cast<std::size_t>(i)] = (i + 1) % n;
  w[static_cast<std::size_t>(perm_rank(swap_top))] += 0.5;
  w[static_cast<std::size_t>(perm_rank(cut_top))] += 0.5;
  return GroupMeasure(n, std::move(w));
}

GroupMeasure gsr_measure(int n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  const auto size = static_cast<std::size_t>(factorial(n));
  std::vector<double> w(size, 0.0);
  const double slice = std::ldexp(1.0, -n);  // each (cut, interleaving) pair
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  Perm deck(static_cast<std::size_t>(n));
  for (std::uint32_t subset = 0;; ++subset) {
    const int cut = std::popcount(subset);
    int from_top = 0;
    int from_bottom = cut;
    for (int pos = 0; pos < n; ++pos) {
      deck[static_cast<std::size_t>(pos)] =
          ((subset >> pos) & 1u) ? from_top++ : from_bottom++;
    }
    w[static_cast<std::size_t>(perm_rank(deck))] += slice;
    if (subset == full) break;
  }
  return GroupMeasure(n, std::move(w));
}

double riffle_tv_exact(int n, int k) {
  if (n < 1 || n > 100) throw std::invalid_argument("deck size out of range 1..100");
  if (k < 0 || k > 30) throw std::invalid_argument("riffle count out of range 0..30");
  const BigInt shuffles = BigInt(1) << (static_cast<unsigned>(n) * static_cast<unsigned>(k));
  const BigInt nfact = factorial_big(n);
  const std::vector<BigInt> descents = eulerian_numbers(n);
  const BigInt a = BigInt(1) << static_cast<unsigned>(k);

  BigInt numerator = 0;
  for (int rising = 1; rising <= n; ++rising) {
    const BigInt count = descents[static_cast<std::size_t>(rising - 1)];
    const BigInt block = binomial_big(a + n - rising, n) * nfact - shuffles;
    numerator += count * (block >= 0 ? block : BigInt(-block));
  }
  const BigRat tv(numerator, 2 * shuffles * nfact);
  return tv.convert_to<double>();
}

std::vector<FulmanRow> fulman_cut_check(int n, std::int64_t max_steps) {
  if (n > 6) throw std::invalid_argument("dense riffle profiles capped at n = 6");
  const GroupMeasure riffle = gsr_measure(n);
  const GroupMeasure cut = cut_measure(n);
  std::vector<FulmanRow> rows;
  rows.reserve(static_cast<std::size_t>(max_steps) + 1);
  GroupMeasure current = convolve_power(riffle, 0);
  for (std::int64_t k = 0; k <= max_steps; ++k) {
    if (k > 0) current = convolve(riffle, current);
    rows.push_back({k, tv_to_uniform(current), tv_to_uniform(convolve(cut, current))});
  }
  return rows;
}

double mallows_normalizer(int n, double theta) {
  double z = 1.0;
  for (int i = 1; i <= n; ++i) {
    double geom = 0.0;
    double power = 1.0;
    for (int j = 0; j < i; ++j) {
      geom += power;
      power *= theta;
    }
    z *= geom;
  }
  return z;
}

GroupMeasure mallows_distribution(int n, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("theta must be in (0, 1]");
  }
  const auto size = static_cast<std::size_t>(factorial(n));
  std::vector<double> w(size);
  double sum = 0.0;
  for (std::size_t r = 0; r < size; ++r) {
    const Perm sigma = perm_unrank(n, static_cast<std::int64_t>(r));
    w[r] = std::pow(theta, inversions(sigma));
    sum += w[r];
  }
  const double z = mallows_normalizer(n, theta);
  if (std::abs(sum - z) > 1e-9 * z) {
    throw std::logic_error("inversion generating function disagrees with product formula");
  }
  for (double& v : w) v /= sum;
  return GroupMeasure(n, std::move(w));
}

namespace {

// Metropolis kernel for one adjacent value pair (t, t+1): swapping when the
// values sit in order creates an inversion (accepted with probability theta);
// swapping when out of order removes one (always accepted).
Kernel metropolis_factor(int n, double theta, int t) {
  const auto size = static_cast<std::size_t>(factorial(n));
  std::vector<std::vector<KernelEntry>> rows(size);
  for (std::size_t r = 0; r < size; ++r) {
    Perm sigma = perm_unrank(n, static_cast<std::int64_t>(r));
    std::size_t pos_low = 0;
    std::size_t pos_high = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (sigma[i] == t) pos_low = i;
      if (sigma[i] == t + 1) pos_high = i;
    }
    std::swap(sigma[pos_low], sigma[pos_high]);
    const auto target = static_cast<std::uint32_t>(perm_rank(sigma));
    if (pos_low < pos_high) {
      // In order: proposal increases inversions.
      rows[r].push_back({target, theta});
      if (theta < 1.0) rows[r].push_back({static_cast<std::uint32_t>(r), 1.0 - theta});
    } else {
      rows[r].push_back({target, 1.0});
    }
  }
  return Kernel(size, std::move(rows), "mallows-pair-" + std::to_string(t));
}

}  // namespace

ScanKernel::ScanKernel(int n, double theta, ScanMode mode)
    : n_(n), theta_(theta), mode_(mode) {
  if (n < 2 || n > 7) throw std::invalid_argument("scan kernels support n in 2..7");
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must be in (0, 1]");
  factors_.reserve(static_cast<std::size_t>(n - 1));
  for (int t = 0; t + 1 < n; ++t) factors_.push_back(metropolis_factor(n, theta, t));

  if (mode == ScanMode::systematic) {
    for (int t = 0; t + 1 < n; ++t) schedule_.push_back(t);
    for (int t = n - 3; t >= 0; --t) schedule_.push_back(t);
  } else if (mode == ScanMode::random) {
    // Average of the adjacent-pair kernels.
    const auto size = static_cast<std::size_t>(factorial(n));
    const double w = 1.0 / static_cast<double>(n - 1);
    std::vector<std::vector<KernelEntry>> rows(size);
    for (std::size_t r = 0; r < size; ++r) {
      double hold = 0.0;
      for (const Kernel& factor : factors_) {
        for (const auto& e : factor.rows()[r]) {
          if (e.target == r) {
            hold += w * e.prob;
          } else {
            rows[r].push_back({e.target, w * e.prob});
          }
        }
      }
      if (hold > 0.0) rows[r].push_back({static_cast<std::uint32_t>(r), hold});
    }
    random_kernel_ = Kernel(size, std::move(rows),
                            "mallows-random-scan-" + std::to_string(n));
  }

  // The chain must fix its target law; one lazy step verifies it.
  const Dist target = stationary().dist();
  const Dist stepped = step(target);
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (std::abs(stepped[i] - target[i]) > 1e-10) {
      throw std::logic_error("scan kernel does not fix the Mallows law");
    }
  }
}

int ScanKernel::step_cost() const {
  return mode_ == ScanMode::systematic ? static_cast<int>(schedule_.size()) : 1;
}

Dist ScanKernel::step(const Dist& p) const {
  if (mode_ == ScanMode::random) return random_kernel_->apply(p);
  Dist current = p;
  for (int t : schedule_) current = factors_[static_cast<std::size_t>(t)].apply(current);
  return current;
}

Kernel ScanKernel::as_kernel(std::size_t cap) const {
  if (mode_ == ScanMode::random) return *random_kernel_;
  const auto size = static_cast<std::size_t>(factorial(n_));
  if (size > cap) {
    throw std::length_error("systematic sweep kernel materialization capped at " +
                            std::to_string(cap) + " states; use step()");
  }
  std::vector<std::vector<KernelEntry>> rows(size);
  for (std::size_t r = 0; r < size; ++r) {
    Dist row = step(Dist::point_mass(size, r));
    for (std::size_t j = 0; j < size; ++j) {
      if (row[j] != 0.0) rows[r].push_back({static_cast<std::uint32_t>(j), row[j]});
    }
  }
  return Kernel(size, std::move(rows), "mallows-systematic-scan-" + std::to_string(n_));
}

std::optional<std::int64_t> ScanKernel::mixing_time_from(const Dist& start, double eps,
                                                         std::int64_t max_steps) const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0, 1)");
  const Dist target = stationary().dist();
  Dist current = start;
  for (std::int64_t l = 0; l <= max_steps; ++l) {
    if (l > 0) current = step(current);
    if (tv_distance(current, target) <= eps) return l;
  }
  return std::nullopt;
}

ScanKernel scan_kernel(int n, double theta, ScanMode mode) {
  return ScanKernel(n, theta, mode);
}

int adjacency_statistic(const Perm& sigma) {
  if (!is_permutation(sigma)) throw std::invalid_argument("malformed permutation");
  int count = 0;
  for (std::size_t i = 0; i + 1 < sigma.size(); ++i) {
    if (std::abs(sigma[i] - sigma[i + 1]) == 1) ++count;
  }
  return count;
}

int lis_length(const Perm& sigma) {
  if (!is_permutation(sigma)) throw std::invalid_argument("malformed permutation");
  std::vector<int> tails;
  for (int v : sigma) {
    auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end()) {
      tails.push_back(v);
    } else {
      *it = v;
    }
  }
  return static_cast<int>(tails.size());
}

Statistic statistic_from_name(const std::string& name) {
  if (name == "adjacency") return Statistic::adjacency;
  if (name == "lis") return Statistic::lis;
  throw std::invalid_argument("unknown statistic: " + name);
}

std::string statistic_name(Statistic s) {
  return s == Statistic::adjacency ? "adjacency" : "lis";
}

int evaluate_statistic(Statistic s, const Perm& sigma) {
  return s == Statistic::adjacency ? adjacency_statistic(sigma) : lis_length(sigma);
}

NullDistribution null_distribution(Statistic stat, int n, std::int64_t samples,
                                   std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  NullDistribution out;
  out.samples = samples;
  Rng rng(seed);
  Perm sigma = identity_perm(n);
  double sum = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int i = n - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)));
      std::swap(sigma[static_cast<std::size_t>(i)], sigma[j]);
    }
    const int value = evaluate_statistic(stat, sigma);
    ++out.counts[value];
    sum += value;
  }
  out.mean = sum / static_cast<double>(samples);
  return out;
}

std::vector<Perm> read_permutations(std::istream& in) {
  std::vector<Perm> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Perm sigma;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) {
      sigma.push_back(std::stoi(token) - 1);  // 1-based on disk
    }
    if (!is_permutation(sigma)) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  " is not a permutation");
    }
    out.push_back(std::move(sigma));
  }
  return out;
}

}  // namespace mixlab
