#pragma once

#include "orthopersist/ensemble.hpp"
#include "orthopersist/quadrature.hpp"

#include <complex>
#include <utility>

namespace orthopersist::skewortho {

/// Monic skew-orthogonal polynomial pi_k for the truncation weight:
/// even k: z^k; odd k = 2m+1: z^{2m+1} - (2m/(2m+ell)) z^{2m-1}.
struct SkewPoly {
    int index = 0;
    int ell = 1;
    bool odd() const { return index % 2 != 0; }
    std::complex<double> operator()(std::complex<double> z) const;
};

std::complex<double> pi_eval(int k, int ell, std::complex<double> z);

/// Squared weight w_ell^2(z); zero outside the closed unit disk. At
/// ell = 1 the points z = +-1 are non-integrable only on the real line;
/// they return +infinity as a marker.
double weight_sq(int ell, std::complex<double> z);

/// Full skew product (pi_i, pi_j): ell!(2k)!/(2k+ell)! on adjacent pairs
/// (2k, 2k+1), zero otherwise; antisymmetric.
double skew_product_closed(int i, int j, int ell);

/// Real-axis part of the skew product, closed form:
/// ell! / (2^{ell-1} Gamma^2(ell/2) (2q+ell)) * B(p+q+1/2, ell)
/// for (i,j) = (2p, 2q+1); zero for same parity; antisymmetric.
double skew_product_real_closed(int i, int j, int ell);

struct SkewProductParts {
    double real_part = 0.0;
    double complex_part = 0.0;
};

/// Independent quadrature evaluation of both parts of the skew product.
/// Real part: Gauss-Jacobi on [-1,1] with the closed-form epsilon
/// transforms; complex part: tensor Gauss-Legendre over the upper half
/// disk. Throws AccuracyBudget if the density-halving error estimate
/// exceeds 1e-6.
SkewProductParts skew_product_quadrature(int i, int j, int ell, int rule_density = 200);

/// Pfaffian-ratio evaluation of the no-real-eigenvalue probability:
/// numerator from quadrature complex parts, denominator from the
/// closed-form full products. Independent oracle for p_no_real.
double pfaffian_ratio_p(const ensemble::EnsembleParams& params, int rule_density = 200);

} // namespace orthopersist::skewortho
