#pragma once

#include "orthopersist/matrix.hpp"

#include <span>

namespace orthopersist::densela {

/// ln det A for symmetric positive definite A, via Cholesky.
/// Throws NotPositiveDefinite (with the failing pivot index) otherwise.
double sym_logdet_cholesky(const DenseMatrix& A);

/// All eigenvalues of symmetric A, ascending, by cyclic Jacobi sweeps
/// until the off-diagonal Frobenius norm drops below 1e-14 * ||A||_F.
Spectrum sym_eigen_jacobi(const DenseMatrix& A);

/// Eigenvalues of a general square real matrix: balancing, Hessenberg
/// reduction by stabilized elimination, Francis double-shift QR.
/// real_count counts 1x1 blocks plus 2x2 blocks with nonnegative
/// discriminant. Throws NoConvergence after 30*dim iterations.
EigenList real_eigen_schur(const DenseMatrix& A);

/// Elementary symmetric polynomials e_0..e_n of nonnegative inputs via
/// the triangle recurrence; all outputs nonnegative.
std::vector<double> elementary_symmetric(std::span<const double> values);

/// ln |det A| and sign via LU with partial pivoting (test/oracle helper).
std::pair<double, int> logdet_lu(DenseMatrix A);

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B);

} // namespace orthopersist::densela
