#pragma once

#include "orthopersist/matrix.hpp"

#include <vector>

namespace orthopersist::ensemble {

/// Truncation ensemble parameters: matrices of size 2n x 2n cut from
/// Haar-orthogonal matrices of size (2n+ell) x (2n+ell).
struct EnsembleParams {
    int n = 1;
    int ell = 1;
};

/// Probabilities P(number of real eigenvalues = 2k), k = 0..n.
struct RealCountDistribution {
    EnsembleParams params;
    std::vector<double> probs;
};

/// n x n Hankel moment matrix: entries B(p+q+1/2, ell) / (2^{ell-1} Gamma^2(ell/2)).
densela::DenseMatrix hankel_matrix(const EnsembleParams& params);

/// Diagonal of the weight matrix: sqrt( Gamma(2p+ell) / Gamma(2p+1) ), p = 0..n-1.
std::vector<double> weight_diag(const EnsembleParams& params);

/// Symmetrized D H D.
densela::DenseMatrix weighted_hankel(const EnsembleParams& params);

/// Probability that the truncated matrix has no real eigenvalues:
/// det(I - D H D) via Cholesky log-determinant.
double p_no_real(const EnsembleParams& params);

/// Moment generating function of the real-eigenvalue count at s:
/// det(I - (1 - e^{2s}) D H D) = prod_j (1 - (1-e^{2s}) lambda_j).
double mgf(const EnsembleParams& params, double s);

/// Full distribution of the real-eigenvalue count: p_{2n,2k} =
/// prod_j (1-lambda_j) * e_k( lambda_j/(1-lambda_j) ). Throws
/// SpectralRadiusExceeded if an eigenvalue of D H D reaches 1.
RealCountDistribution real_count_distribution(const EnsembleParams& params);

/// ln P(all eigenvalues real), assembled from log-Gamma sums
/// (Barnes G ratios).
double log_p_all_real(const EnsembleParams& params);

} // namespace orthopersist::ensemble
