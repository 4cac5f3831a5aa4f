#pragma once

#include "orthopersist/logvalue.hpp"

namespace orthopersist::specfun {

/// ln Gamma(x) for x > 0. Stirling with Bernoulli corrections above 10,
/// upward recurrence below. Relative error <= 1e-14.
double log_gamma(double x);

/// ln B(a,b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b), a,b > 0.
double log_beta(double a, double b);

/// Non-regularized incomplete Beta B(x;a,b) = int_0^x t^{a-1}(1-t)^{b-1} dt
/// for x in [0,1], via Lentz continued fraction with the symmetry switch
/// at x = (a+1)/(a+b+2).
double inc_beta(double x, double a, double b);

/// sum_{j=0}^{n-1} ln Gamma(j+a) = ln( G(n+a)/G(a) ) with G the Barnes
/// G-function; exact summation.
double log_gamma_sum(long n, double a);

/// zeta(3/2) by Euler-Maclaurin accelerated series, >= 12 digits.
double riemann_zeta_3_2();

/// ln of the orthogonal-group volume: sum_{j=1}^{N} [ (j/2) ln pi - ln Gamma(j/2) ].
double log_volume_orthogonal(int N);

} // namespace orthopersist::specfun
