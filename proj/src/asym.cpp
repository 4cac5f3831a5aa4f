#include "orthopersist/asym.hpp"
#include "orthopersist/quadrature.hpp"
#include "orthopersist/specfun.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace orthopersist::asym {

namespace {

// ln( pi x / sinh(pi x) ), accurate near 0: log1p of the sinh(z)/z - 1 series.
double log_sinhc_inv(double px) {
    if (px < 0.5) {
        const double z2 = px * px;
        return -std::log1p(
            z2 / 6.0 *
            (1.0 + z2 / 20.0 * (1.0 + z2 / 42.0 * (1.0 + z2 / 72.0 * (1.0 + z2 / 110.0)))));
    }
    return std::log(px) - (px + std::log1p(-std::exp(-2.0 * px)) - std::log(2.0));
}

// ln cosh(z), accurate near 0: log1p of the cosh(z) - 1 series.
double log_cosh(double z) {
    if (z < 0.5) {
        const double z2 = z * z;
        return std::log1p(
            z2 / 2.0 *
            (1.0 + z2 / 12.0 * (1.0 + z2 / 30.0 * (1.0 + z2 / 56.0 * (1.0 + z2 / 90.0)))));
    }
    return z + std::log1p(std::exp(-2.0 * z)) - std::log(2.0);
}

// ln( |Gamma(ell/2 + ix)|^2 / Gamma(ell/2)^2 ), the MGF of the sech^ell walk step.
double log_gamma_ratio(int ell, double x) {
    const double px = M_PI * x;
    double s;
    if (ell % 2 == 0) {
        s = log_sinhc_inv(px);
        for (int k = 1; k < ell / 2; ++k) s += std::log1p(x * x / (static_cast<double>(k) * k));
    } else {
        s = -log_cosh(px);
        for (int k = 0; k < (ell - 1) / 2; ++k) s += std::log1p(x * x / ((k + 0.5) * (k + 0.5)));
    }
    return s;
}

// Common driver: -(1/2pi) int_0^inf ln(1 - r(x)) dx with r(x) = exp(g(x)),
// g(0) = 0 (log singularity at the origin handled by x = e^t).
double exponent_integral(const std::function<double(double)>& log_ratio, double& err_out) {
    auto integrand = [&](double x) {
        const double one_minus = -std::expm1(log_ratio(x));
        return std::log(one_minus);
    };
    double e1 = 0.0, e2 = 0.0;
    const double x0 = 0.5;
    const double I1 = quadrature::tanh_sinh(
        [&](double t) {
            const double x = std::exp(t);
            return integrand(x) * x;
        },
        -45.0, std::log(x0), 1e-12, 12, &e1);
    // upper cutoff: ratio below 1e-19
    double hi = 1.0;
    while (log_ratio(hi) > std::log(1e-19)) hi *= 1.25;
    double I2 = 0.0;
    double a = x0, width = 1.0;
    while (a < hi) {
        const double b = std::min(a + width, hi);
        double ep = 0.0;
        I2 += quadrature::tanh_sinh(integrand, a, b, 1e-12, 12, &ep);
        e2 += ep;
        a = b;
        width *= 2.0;
    }
    err_out = (e1 + e2) / (2.0 * M_PI);
    return -(I1 + I2) / (2.0 * M_PI);
}

} // namespace

double gamma_mod2(int ell, double x) {
    if (ell < 1) throw std::domain_error("gamma_mod2: ell >= 1 required");
    const double lg = log_gamma_ratio(ell, x) + 2.0 * specfun::log_gamma(ell / 2.0);
    return std::exp(lg);
}

ExponentReport theta() {
    ExponentReport rep;
    rep.formula_id = FormulaId::theta;
    rep.value = exponent_integral([](double x) { return -log_cosh(M_PI * x); }, rep.quadrature_error);
    return rep;
}

ExponentReport theta_ell(int ell) {
    if (ell < 1 || ell > 10000) throw std::domain_error("theta_ell: 1 <= ell <= 10^4 required");
    ExponentReport rep;
    rep.formula_id = FormulaId::theta_ell;
    rep.value = exponent_integral([ell](double x) { return log_gamma_ratio(ell, x); },
                                  rep.quadrature_error);
    return rep;
}

double theta_large_ell(int ell) {
    if (ell < 1) throw std::domain_error("theta_large_ell: ell >= 1 required");
    return 0.25 * std::sqrt(ell / (2.0 * M_PI)) * specfun::riemann_zeta_3_2();
}

double phi(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("phi: alpha > 0 required");
    const double ln2 = std::log(2.0);
    if (alpha <= 1.0) {
        return -ln2 - alpha * (1.0 + 0.75 * alpha) * std::log(alpha) - 0.5 * alpha +
               (1.0 + alpha) * (1.0 + alpha) * std::log1p(alpha) -
               (1.0 + 0.5 * alpha) * (1.0 + 0.5 * alpha) * std::log(2.0 + alpha);
    }
    // large-alpha form: the ln(alpha) coefficient cancels exactly, so
    // assemble from log1p terms to avoid catastrophic cancellation
    const double u = 1.0 / alpha;
    return -ln2 - 0.5 * alpha + alpha * alpha * (1.0 + u) * (1.0 + u) * std::log1p(u) -
           0.25 * alpha * alpha * (1.0 + 2.0 * u) * (1.0 + 2.0 * u) * std::log1p(2.0 * u);
}

double mgf_log_coefficient(double s) {
    if (s > 0.5 * std::log(2.0)) throw std::domain_error("mgf_log_coefficient: s <= ln(2)/2 required");
    const double a = std::acos(std::exp(s) / std::sqrt(2.0));
    return 0.125 - 2.0 / (M_PI * M_PI) * a * a;
}

double alpha_det_coefficient(double alpha) {
    if (std::abs(alpha) > 1.0)
        throw std::domain_error("alpha_det_coefficient: |alpha| <= 1 required");
    const double a = std::asin(alpha);
    return -(a * a + M_PI * a) / (2.0 * M_PI * M_PI);
}

} // namespace orthopersist::asym
