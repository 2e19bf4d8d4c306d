#include "mixlab/modular_affine.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mixlab/rng.hpp"

namespace mixlab {

namespace {

std::vector<std::pair<std::int64_t, double>> default_increments() {
  return {{0, 1.0 / 3.0}, {+1, 1.0 / 3.0}, {-1, 1.0 / 3.0}};
}

std::int64_t positive_mod(std::int64_t v, std::int64_t p) {
  const std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

// One annealed step: new[j] = sum_a P(a) sum_e P(e) old[a^{-1}(j - e)].
void annealed_step(const AffineWalkSpec& spec,
                   const std::vector<std::int64_t>& inverses,
                   const std::vector<double>& old, std::vector<double>& out) {
  const std::int64_t p = spec.modulus;
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t ai = 0; ai < spec.multipliers.size(); ++ai) {
    const double pa = spec.multipliers[ai].second;
    const std::int64_t inv = inverses[ai];
    for (const auto& [eps, pe] : spec.increments) {
      const double w = pa * pe;
      if (w == 0.0) continue;
      for (std::int64_t j = 0; j < p; ++j) {
        const std::int64_t src = positive_mod(inv * positive_mod(j - eps, p), p);
        out[static_cast<std::size_t>(j)] += w * old[static_cast<std::size_t>(src)];
      }
    }
  }
}

}  // namespace

AffineWalkSpec AffineWalkSpec::doubling(std::int64_t p) {
  AffineWalkSpec spec;
  spec.modulus = p;
  spec.multipliers = {{2, 1.0}};
  spec.increments = default_increments();
  spec.validate();
  return spec;
}

AffineWalkSpec AffineWalkSpec::plain(std::int64_t p) {
  AffineWalkSpec spec;
  spec.modulus = p;
  spec.multipliers = {{1, 1.0}};
  spec.increments = default_increments();
  spec.validate();
  return spec;
}

AffineWalkSpec AffineWalkSpec::random_multiplier(std::int64_t p, std::vector<std::int64_t> as) {
  if (as.empty()) throw std::invalid_argument("need at least one multiplier");
  AffineWalkSpec spec;
  spec.modulus = p;
  const double w = 1.0 / static_cast<double>(as.size());
  for (std::int64_t a : as) spec.multipliers.emplace_back(a, w);
  spec.increments = default_increments();
  spec.validate();
  return spec;
}

void AffineWalkSpec::validate() const {
  if (modulus < 3 || modulus % 2 == 0) {
    throw std::invalid_argument("modulus must be odd and >= 3");
  }
  if (multipliers.empty()) throw std::invalid_argument("no multipliers");
  double msum = 0.0;
  for (const auto& [a, pa] : multipliers) {
    if (!(pa >= 0.0)) throw std::invalid_argument("negative multiplier probability");
    msum += pa;
    if (std::gcd(positive_mod(a, modulus), modulus) != 1) {
      throw std::invalid_argument("multiplier " + std::to_string(a) +
                                  " is not invertible mod " + std::to_string(modulus));
    }
  }
  if (std::abs(msum - 1.0) > 1e-12) throw std::invalid_argument("multiplier law must sum to 1");
  if (increments.empty()) throw std::invalid_argument("no increments");
  double esum = 0.0;
  for (const auto& [e, pe] : increments) {
    (void)e;
    if (!(pe >= 0.0)) throw std::invalid_argument("negative increment probability");
    esum += pe;
  }
  if (std::abs(esum - 1.0) > 1e-12) throw std::invalid_argument("increment law must sum to 1");
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = ((a % p) + p) % p;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) {
    throw std::invalid_argument(std::to_string(a) + " has no inverse mod " + std::to_string(p));
  }
  return ((t % p) + p) % p;
}

Dist affine_evolve(const AffineWalkSpec& spec, std::int64_t steps) {
  spec.validate();
  if (steps < 0) throw std::invalid_argument("negative step count");
  const auto p = static_cast<std::size_t>(spec.modulus);
  std::vector<std::int64_t> inverses;
  inverses.reserve(spec.multipliers.size());
  for (const auto& [a, pa] : spec.multipliers) {
    (void)pa;
    inverses.push_back(mod_inverse(a, spec.modulus));
  }
  std::vector<double> law(p, 0.0);
  law[0] = 1.0;
  std::vector<double> next(p, 0.0);
  for (std::int64_t l = 0; l < steps; ++l) {
    annealed_step(spec, inverses, law, next);
    law.swap(next);
  }
  return unchecked_dist(std::move(law));
}

Dist affine_evolve_quenched(const AffineWalkSpec& spec, std::int64_t steps, std::uint64_t seed) {
  spec.validate();
  if (steps < 0) throw std::invalid_argument("negative step count");
  const auto p = static_cast<std::size_t>(spec.modulus);
  Rng rng(seed);
  std::vector<double> law(p, 0.0);
  law[0] = 1.0;
  std::vector<double> next(p, 0.0);
  for (std::int64_t l = 0; l < steps; ++l) {
    // Draw this step's multiplier from its law.
    double u = rng.uniform01();
    std::size_t pick = 0;
    for (; pick + 1 < spec.multipliers.size(); ++pick) {
      u -= spec.multipliers[pick].second;
      if (u < 0.0) break;
    }
    const std::int64_t inv = mod_inverse(spec.multipliers[pick].first, spec.modulus);
    std::fill(next.begin(), next.end(), 0.0);
    for (const auto& [eps, pe] : spec.increments) {
      for (std::int64_t j = 0; j < spec.modulus; ++j) {
        const std::int64_t src =
            ((inv * (((j - eps) % spec.modulus) + spec.modulus)) % spec.modulus);
        next[static_cast<std::size_t>(j)] += pe * law[static_cast<std::size_t>(src)];
      }
    }
    law.swap(next);
  }
  return unchecked_dist(std::move(law));
}

Kernel affine_kernel(const AffineWalkSpec& spec, std::size_t cap) {
  spec.validate();
  const auto p = static_cast<std::size_t>(spec.modulus);
  if (p > cap) throw std::length_error("modulus too large for a dense kernel");
  std::vector<std::vector<KernelEntry>> rows(p);
  for (std::int64_t x = 0; x < spec.modulus; ++x) {
    for (const auto& [a, pa] : spec.multipliers) {
      for (const auto& [eps, pe] : spec.increments) {
        const auto y = static_cast<std::uint32_t>(positive_mod(a * x + eps, spec.modulus));
        rows[static_cast<std::size_t>(x)].push_back({y, pa * pe});
      }
    }
  }
  return Kernel(p, std::move(rows), "affine-mod-" + std::to_string(spec.modulus));
}

TVProfile affine_tv_profile(const AffineWalkSpec& spec, std::int64_t max_steps) {
  spec.validate();
  if (max_steps < 0) throw std::invalid_argument("negative step count");
  const auto p = static_cast<std::size_t>(spec.modulus);
  const Dist uniform = Dist::uniform(p);
  std::vector<std::int64_t> inverses;
  for (const auto& [a, pa] : spec.multipliers) {
    (void)pa;
    inverses.push_back(mod_inverse(a, spec.modulus));
  }
  TVProfile profile;
  profile.metric = Metric::tv;
  profile.label = "affine-mod-" + std::to_string(spec.modulus);
  std::vector<double> law(p, 0.0);
  law[0] = 1.0;
  std::vector<double> next(p, 0.0);
  for (std::int64_t l = 0; l <= max_steps; ++l) {
    if (l > 0) {
      annealed_step(spec, inverses, law, next);
      law.swap(next);
    }
    double tv = 0.0;
    const double u = 1.0 / static_cast<double>(p);
    for (double w : law) tv += std::abs(w - u);
    profile.steps.push_back(l);
    profile.values.push_back(0.5 * tv);
  }
  return profile;
}

double cdg_constant() {
  const double ratio = (5.0 + std::sqrt(17.0)) / 9.0;
  return 1.0 / (1.0 - std::log2(ratio));
}

std::vector<DoublingRow> doubling_speedup_experiment(const std::vector<std::int64_t>& ps,
                                                     double step_factor) {
  std::vector<DoublingRow> rows;
  rows.reserve(ps.size());
  for (std::int64_t p : ps) {
    const auto steps =
        static_cast<std::int64_t>(std::ceil(step_factor * std::log2(static_cast<double>(p))));
    const Dist uniform = Dist::uniform(static_cast<std::size_t>(p));
    const Dist doubled = affine_evolve(AffineWalkSpec::doubling(p), steps);
    const Dist plain = affine_evolve(AffineWalkSpec::plain(p), steps);
    rows.push_back({p, steps, tv_distance(doubled, uniform), tv_distance(plain, uniform)});
  }
  return rows;
}

std::vector<DoublingRow> doubling_speedup_experiment_eps(const std::vector<std::int64_t>& ps,
                                                         double eps) {
  return doubling_speedup_experiment(ps, cdg_constant() + eps);
}

double doubling_pass_fraction(const std::vector<DoublingRow>& rows, double threshold) {
  if (rows.empty()) return 0.0;
  std::size_t pass = 0;
  for (const auto& row : rows) {
    if (row.tv_doubling < threshold) ++pass;
  }
  return static_cast<double>(pass) / static_cast<double>(rows.size());
}

}  // namespace mixlab
