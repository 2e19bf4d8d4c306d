#include "mixlab/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace mixlab {

SpectralData spectral_decomposition(const Kernel& k, const Dist& pi, std::size_t dense_cap) {
  const std::size_t m = k.size();
  if (pi.size() != m) throw std::invalid_argument("distribution/kernel dimension mismatch");
  if (!is_reversible(k, pi)) {
    throw std::invalid_argument(
        "kernel '" + k.label() +
        "' is not reversible w.r.t. the given distribution (detailed-balance residual "
        "exceeds 1e-10); use subdominant_modulus for nonreversible kernels");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (pi[i] <= 0.0) throw std::domain_error("stationary distribution must be positive");
  }

  const std::vector<double> dense = k.to_dense(dense_cap);
  Eigen::MatrixXd sym(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      sym(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::sqrt(pi[i] / pi[j]) * dense[i * m + j];
    }
  }
  // Symmetrize away the last ulps so the solver sees an exactly symmetric matrix.
  sym = 0.5 * (sym + sym.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed on symmetrized kernel");
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  const auto& vals = solver.eigenvalues();
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return vals(a) > vals(b); });

  SpectralData data{{}, {}, pi};
  data.eigenvalues.reserve(m);
  data.eigenvectors.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto col = solver.eigenvectors().col(static_cast<Eigen::Index>(order[j]));
    std::vector<double> psi(m);
    for (std::size_t i = 0; i < m; ++i) {
      psi[i] = col(static_cast<Eigen::Index>(i)) / std::sqrt(pi[i]);
    }
    // Fix the sign so the top eigenvector is the constant +1 function.
    if (psi[0] < 0.0) {
      for (double& v : psi) v = -v;
    }
    data.eigenvalues.push_back(vals(static_cast<Eigen::Index>(order[j])));
    data.eigenvectors.push_back(std::move(psi));
  }
  return data;
}

double chi_square_spectral(const SpectralData& s, std::size_t state, std::int64_t steps) {
  if (state >= s.pi.size()) throw std::out_of_range("state index out of range");
  if (steps < 0) throw std::invalid_argument("negative step count");
  double sum = 0.0;
  for (std::size_t j = 1; j < s.eigenvalues.size(); ++j) {
    const double lambda_sq = s.eigenvalues[j] * s.eigenvalues[j];
    double power = 1.0;
    // lambda^(2l) by squaring; l is an integer in every use here.
    std::int64_t e = steps;
    double base = lambda_sq;
    while (e > 0) {
      if (e & 1) power *= base;
      base *= base;
      e >>= 1;
    }
    const double psi = s.eigenvectors[j][state];
    sum += power * psi * psi;
  }
  return sum;
}

double subdominant_modulus(const Kernel& k, std::size_t dense_cap) {
  const std::size_t m = k.size();
  const std::vector<double> dense = k.to_dense(dense_cap);
  Eigen::MatrixXd mat(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = dense[i * m + j];
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(mat, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed on kernel");
  }
  const auto& vals = solver.eigenvalues();

  // Drop exactly one copy of the trivial eigenvalue (the one closest to 1).
  std::size_t trivial = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    const double d = std::abs(vals(static_cast<Eigen::Index>(j)) - std::complex<double>(1.0, 0.0));
    if (d < best) {
      best = d;
      trivial = j;
    }
  }
  double modulus = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (j == trivial) continue;
    modulus = std::max(modulus, std::abs(vals(static_cast<Eigen::Index>(j))));
  }
  return modulus;
}

double spectral_gap(const Kernel& k, std::size_t dense_cap) {
  // |lambda| <= 1 for a stochastic matrix; anything past 1 is solver noise.
  return std::clamp(1.0 - subdominant_modulus(k, dense_cap), 0.0, 1.0);
}

}  // namespace mixlab
