#include "mixlab/hypercube.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mixlab {

namespace {

std::uint32_t mask_of(int n) { return n == 32 ? ~0u : ((1u << n) - 1u); }

std::uint32_t rotl_bits(std::uint32_t v, int s, int n) {
  s %= n;
  if (s == 0) return v & mask_of(n);
  return ((v << s) | (v >> (n - s))) & mask_of(n);
}

double ipow(double base, std::int64_t e) {
  double result = 1.0;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

// TV to uniform of the law whose spectrum powers are already in `work`
// (inverse transform in place, then fold).
double tv_from_powered_spectrum(std::vector<double>& work) {
  fwht(std::span<double>(work));
  const double scale = 1.0 / static_cast<double>(work.size());
  const double u = scale;
  double tv = 0.0;
  for (double v : work) tv += std::abs(v * scale - u);
  return 0.5 * tv;
}

}  // namespace

void GeneratorSet::validate() const {
  if (n < 1 || n > kMaxTransformBits) {
    throw std::invalid_argument("vector length must be in 1.." +
                                std::to_string(kMaxTransformBits));
  }
  if (vectors.empty()) throw std::invalid_argument("need at least one generator");
  for (std::uint32_t v : vectors) {
    if ((v & ~mask_of(n)) != 0) throw std::invalid_argument("generator exceeds n bits");
  }
}

GeneratorSet spatula_generators(int n, int d, bool holding) {
  if (n < 1 || n > kMaxTransformBits) {
    throw std::invalid_argument("vector length must be in 1.." +
                                std::to_string(kMaxTransformBits));
  }
  if (d < 1 || d > n) throw std::invalid_argument("flip width out of range 1..n");
  const std::uint32_t block = d == 32 ? ~0u : ((1u << d) - 1u);
  return comb_generators(n, block, holding);
}

GeneratorSet comb_generators(int n, std::uint32_t pattern, bool holding) {
  GeneratorSet g;
  g.n = n;
  g.holding = holding;
  g.vectors.reserve(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) g.vectors.push_back(rotl_bits(pattern, s, n));
  g.validate();
  return g;
}

GeneratorSet random_generators(int n, int count, Rng& rng) {
  if (count < 1) throw std::invalid_argument("need at least one generator");
  GeneratorSet g;
  g.n = n;
  g.holding = false;
  g.vectors.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    g.vectors.push_back(static_cast<std::uint32_t>(rng.next()) & mask_of(n));
  }
  g.validate();
  return g;
}

int gf2_rank(std::span<const std::uint32_t> vectors, int n) {
  std::vector<std::uint32_t> basis(static_cast<std::size_t>(n), 0);
  int rank = 0;
  for (std::uint32_t v : vectors) {
    for (int bit = n - 1; bit >= 0 && v != 0; --bit) {
      if (((v >> bit) & 1u) == 0) continue;
      if (basis[static_cast<std::size_t>(bit)] == 0) {
        basis[static_cast<std::size_t>(bit)] = v;
        ++rank;
        v = 0;
      } else {
        v ^= basis[static_cast<std::size_t>(bit)];
      }
    }
  }
  return rank;
}

bool gf2_basis_check(const GeneratorSet& g) {
  g.validate();
  return gf2_rank(g.vectors, g.n) == g.n;
}

void fwht(std::span<double> data) {
  const std::size_t size = data.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("transform length must be a power of two");
  }
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += half << 1) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double a = data[i];
        const double b = data[i + half];
        data[i] = a + b;
        data[i + half] = a - b;
      }
    }
  }
}

std::vector<double> walsh_spectrum(const GeneratorSet& g) {
  g.validate();
  const std::size_t size = std::size_t{1} << g.n;
  const double w = 1.0 / static_cast<double>(g.move_count());
  std::vector<double> q(size, 0.0);
  if (g.holding) q[0] += w;
  for (std::uint32_t v : g.vectors) q[v] += w;
  fwht(std::span<double>(q));
  return q;  // lambda_x, with lambda_0 = 1
}

double hypercube_tv(const GeneratorSet& g, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("negative step count");
  if (!gf2_basis_check(g)) {
    throw std::invalid_argument("generator set does not span C_2^n (rank < n); walk is not ergodic");
  }
  std::vector<double> lambda = walsh_spectrum(g);
  for (double& v : lambda) v = ipow(v, k);
  return tv_from_powered_spectrum(lambda);
}

std::vector<double> hypercube_tv_profile(const GeneratorSet& g, std::int64_t max_steps) {
  if (max_steps < 0) throw std::invalid_argument("negative step count");
  if (!gf2_basis_check(g)) {
    throw std::invalid_argument("generator set does not span C_2^n (rank < n); walk is not ergodic");
  }
  const std::vector<double> lambda = walsh_spectrum(g);
  std::vector<double> powered(lambda.size(), 1.0);
  std::vector<double> work(lambda.size());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(max_steps) + 1);
  for (std::int64_t k = 0; k <= max_steps; ++k) {
    if (k > 0) {
      for (std::size_t x = 0; x < lambda.size(); ++x) powered[x] *= lambda[x];
    }
    work = powered;
    out.push_back(tv_from_powered_spectrum(work));
  }
  return out;
}

std::optional<std::int64_t> hypercube_mixing_time(const GeneratorSet& g, double eps,
                                                  std::int64_t max_steps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0, 1)");
  if (!gf2_basis_check(g)) {
    throw std::invalid_argument("generator set does not span C_2^n (rank < n); walk is not ergodic");
  }
  const std::vector<double> lambda = walsh_spectrum(g);
  std::vector<double> powered(lambda.size(), 1.0);
  std::vector<double> work(lambda.size());
  for (std::int64_t k = 0; k <= max_steps; ++k) {
    if (k > 0) {
      for (std::size_t x = 0; x < lambda.size(); ++x) powered[x] *= lambda[x];
    }
    work = powered;
    if (tv_from_powered_spectrum(work) <= eps) return k;
  }
  return std::nullopt;
}

Kernel hypercube_kernel(const GeneratorSet& g, std::size_t cap) {
  g.validate();
  const std::size_t size = std::size_t{1} << g.n;
  if (size > cap) throw std::length_error("state space too large for a dense kernel");
  const double w = 1.0 / static_cast<double>(g.move_count());
  std::vector<std::vector<KernelEntry>> rows(size);
  for (std::size_t s = 0; s < size; ++s) {
    if (g.holding) rows[s].push_back({static_cast<std::uint32_t>(s), w});
    for (std::uint32_t v : g.vectors) {
      rows[s].push_back({static_cast<std::uint32_t>(s) ^ v, w});
    }
  }
  return Kernel(size, std::move(rows), "hypercube-" + std::to_string(g.n));
}

std::vector<BasisEquivalenceRow> basis_equivalence_check(int n, const std::vector<int>& ds,
                                                         std::int64_t max_steps) {
  const std::vector<double> reference =
      hypercube_tv_profile(spatula_generators(n, 1), max_steps);
  std::vector<BasisEquivalenceRow> rows;
  rows.reserve(ds.size());
  for (int d : ds) {
    BasisEquivalenceRow row;
    row.d = d;
    const GeneratorSet g = spatula_generators(n, d);
    row.gcd_ok = std::gcd(d, n) == 1;
    row.basis_ok = gf2_basis_check(g);
    if (row.gcd_ok && row.basis_ok) {
      const std::vector<double> profile = hypercube_tv_profile(g, max_steps);
      for (std::size_t k = 0; k < profile.size(); ++k) {
        row.max_deviation = std::max(row.max_deviation, std::abs(profile[k] - reference[k]));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("entropy argument outside [0, 1]");
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

double binary_entropy_inverse(double y) {
  if (y < 0.0 || y > 1.0) throw std::domain_error("entropy value outside [0, 1]");
  double lo = 0.0;
  double hi = 0.5;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double wilson_threshold(int n, int N) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (N <= n) throw std::invalid_argument("need more generators than dimensions (N > n)");
  const double p = binary_entropy_inverse(static_cast<double>(n) / static_cast<double>(N));
  return 0.5 * static_cast<double>(N) * std::log(1.0 / (1.0 - 2.0 * p));
}

WilsonReport wilson_experiment(int n, int count, int trials, std::uint64_t seed) {
  if (n > 24) throw std::invalid_argument("experiment capped at n = 24");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  WilsonReport report;
  report.n = n;
  report.count = count;
  report.threshold = wilson_threshold(n, count);
  const Rng base(seed);
  const std::int64_t max_steps =
      std::max<std::int64_t>(64, static_cast<std::int64_t>(std::ceil(20.0 * report.threshold)));

  std::vector<double> ratios;
  for (int t = 0; t < trials; ++t) {
    Rng rng = base.split(static_cast<std::uint64_t>(t));
    WilsonTrial trial;
    trial.trial = t;
    const GeneratorSet g = random_generators(n, count, rng);
    trial.ergodic = gf2_basis_check(g);
    if (!trial.ergodic) {
      ++report.excluded_rank;
      report.trials.push_back(trial);
      continue;
    }
    const std::vector<double> lambda = walsh_spectrum(g);
    trial.aperiodic =
        *std::min_element(lambda.begin(), lambda.end()) > -1.0 + 1e-12;
    if (!trial.aperiodic) {
      ++report.excluded_periodic;
      report.trials.push_back(trial);
      continue;
    }
    trial.tmix = hypercube_mixing_time(g, 0.25, max_steps);
    if (trial.tmix) {
      trial.ratio = static_cast<double>(*trial.tmix) / report.threshold;
      ratios.push_back(trial.ratio);
    }
    report.trials.push_back(trial);
  }
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    const std::size_t mid = ratios.size() / 2;
    report.median_ratio = ratios.size() % 2 == 1
                              ? ratios[mid]
                              : 0.5 * (ratios[mid - 1] + ratios[mid]);
  }
  return report;
}

}  // namespace mixlab
