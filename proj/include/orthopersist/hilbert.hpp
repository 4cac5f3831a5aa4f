#pragma once

namespace orthopersist::hilbert {

/// Eigenfunction polynomial hатP_l evaluated at x^2, i.e. the value
/// (U e_l)(x) of the unitary diagonalizing the infinite Hilbert-type
/// matrix H_{lk} = 1/(pi(l+k+1/2)). Evaluated by the three-term
/// recurrence equivalent to the terminating 4F3 series (the raw series
/// cancels catastrophically beyond l ~ 20).
double hatP_eval(int l, double x);

/// Spectral density factor rho(x) = 2 sech(pi x), overflow-safe.
double rho(double x);

/// mu_m = (1/pi) int_0^inf sech^m(pi u) du by tanh-sinh quadrature.
double moment_mu(int m);

/// Tr(H_n^m) for the n x n Hilbert-type section: eigenvalue powers for
/// n <= 512, repeated symmetric multiplication above.
double trace_power(int n, int m);

/// Large-l asymptotic of hatP: sqrt(cosh(pi x)/(pi l)) *
/// cos(x ln l + 2x ln 2 - arg Gamma(1/2 + ix)).
double hatP_asymptotic(int l, double x);

/// | int_0^inf hatP_l(x^2) hatP_m(x^2) rho(x) dx - delta_{lm} |.
double unitarity_defect(int l, int m);

/// | sum_{k<K} H_{lk} hatP_k(x^2) - sech(pi x) hatP_l(x^2) |.
double multiplication_defect(int l, double x, int K);

/// Im ln Gamma(1/2 + i x) (the phase above).
double arg_gamma_half(double x);

} // namespace orthopersist::hilbert
