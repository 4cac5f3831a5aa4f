#pragma once

namespace orthopersist::asym {

enum class FormulaId { theta, theta_ell, theta_large_ell, phi, mgf_coeff, alpha_det_coeff };

struct ExponentReport {
    double value = 0.0;
    double quadrature_error = 0.0;
    FormulaId formula_id = FormulaId::theta;
};

/// theta = -(1/2pi) int_0^inf ln(1 - sech(pi u)) du  (= 3/16).
ExponentReport theta();

/// Rank-ell decay exponent
/// theta(ell) = -(1/2pi) int_0^inf ln(1 - |Gamma(ell/2+ix)|^2 / Gamma(ell/2)^2) dx,
/// with the Gamma modulus from the closed half-integer/integer products.
ExponentReport theta_ell(int ell);

/// Large-ell asymptotic form (1/4) sqrt(ell/2pi) zeta(3/2).
double theta_large_ell(int ell);

/// n^2-scale rate of the all-real probability at aspect ratio alpha = ell/n.
double phi(double alpha);

/// log n coefficient of the real-count MGF: 1/8 - (2/pi^2) arccos^2(e^s/sqrt 2),
/// for s <= ln(2)/2.
double mgf_log_coefficient(double s);

/// log n coefficient of det(I - alpha H_n):
/// -(1/2pi^2) (arcsin^2 alpha + pi arcsin alpha), |alpha| <= 1.
double alpha_det_coefficient(double alpha);

/// |Gamma(a+ix)|^2 for a = ell/2 (integer or half-integer), via the
/// closed products; exposed for validation.
double gamma_mod2(int ell, double x);

} // namespace orthopersist::asym
