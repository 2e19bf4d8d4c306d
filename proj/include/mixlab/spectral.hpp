#pragma once

#include <cstdint>
#include <vector>

#include "mixlab/kernel.hpp"
#include "mixlab/measures.hpp"

namespace mixlab {

/// Full real spectrum of a reversible kernel. Eigenvalues are sorted
/// descending with eigenvalues[0] = 1; eigenvectors are orthonormal in the
/// pi-weighted inner product (sum_i pi_i psi_j(i) psi_k(i) = delta_jk).
struct SpectralData {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;  // eigenvectors[j][i] = psi_j(i)
  Dist pi;
};

/// Diagonalizes via the symmetrization D^{1/2} K D^{-1/2}, D = diag(pi).
/// Throws if k is not reversible w.r.t. pi within 1e-10 (nonreversible
/// kernels only get subdominant_modulus).
SpectralData spectral_decomposition(const Kernel& k, const Dist& pi,
                                    std::size_t dense_cap = 4096);

/// Spectral form of the chi-square distance of the l-step law from state i:
/// sum over nontrivial eigenvalues of lambda_j^{2l} psi_j(i)^2.
double chi_square_spectral(const SpectralData& s, std::size_t state, std::int64_t steps);

/// Largest |lambda| after removing one copy of the eigenvalue closest to 1.
/// Complex spectrum allowed (nonreversible kernels). gap = 1 - result.
double subdominant_modulus(const Kernel& k, std::size_t dense_cap = 4096);

double spectral_gap(const Kernel& k, std::size_t dense_cap = 4096);

}  // namespace mixlab
