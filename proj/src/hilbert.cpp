#include "orthopersist/hilbert.hpp"
#include "orthopersist/densela.hpp"
#include "orthopersist/quadrature.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace orthopersist::hilbert {

namespace {

double sech(double z) {
    const double e = std::exp(-std::abs(z));
    return 2.0 * e / (1.0 + e * e);
}

// One recurrence step: hatP_{n+1} from hatP_n, hatP_{n-1} at fixed x^2.
inline double hatP_step(int n, double x2, double pn, double pnm1) {
    const double nn = n;
    const double a = ((nn + 0.5) * (nn + 0.5) + nn * nn - x2) / ((nn + 1.0) * (nn + 0.5));
    const double b = nn * (nn - 0.5) / ((nn + 1.0) * (nn + 0.5));
    return a * pn - b * pnm1;
}

} // namespace

double hatP_eval(int l, double x) {
    if (l < 0 || l > 5000) throw std::domain_error("hatP_eval: 0 <= l <= 5000 required");
    // domain reaches past the nominal x <= 50 because the unitarity
    // integrals carry polynomial mass out to x ~ 4l/pi + tail
    if (!(std::abs(x) <= 128.0)) throw std::domain_error("hatP_eval: |x| <= 128 required");
    const double x2 = x * x;
    if (l == 0) return 1.0;
    double pm = 1.0;
    double p = 0.5 * (1.0 - 4.0 * x2);
    for (int n = 1; n < l; ++n) {
        const double pn = hatP_step(n, x2, p, pm);
        pm = p;
        p = pn;
    }
    if (!std::isfinite(p)) throw std::runtime_error("hatP_eval: overflow in recurrence");
    return p;
}

double rho(double x) {
    if (x < 0.0) throw std::domain_error("rho: x >= 0 required");
    return 2.0 * sech(M_PI * x);
}

double moment_mu(int m) {
    if (m < 1) throw std::domain_error("moment_mu: m >= 1 required");
    const double cutoff = (18.0 * std::log(10.0)) / (m * M_PI) + 2.0;
    const double I = quadrature::semi_infinite(
        [m](double u) { return std::pow(sech(M_PI * u), m); }, cutoff, 1e-13);
    return I / M_PI;
}

double trace_power(int n, int m) {
    if (n < 1 || n > 4096 || m < 1 || m > 8)
        throw std::domain_error("trace_power: 1 <= n <= 4096 and 1 <= m <= 8 required");
    densela::DenseMatrix H(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) H(p, q) = 1.0 / (M_PI * (p + q + 0.5));
    if (m == 1) {
        double tr = 0.0;
        for (int p = 0; p < n; ++p) tr += H(p, p);
        return tr;
    }
    if (m == 2) {
        double tr = 0.0;
        for (double v : H.data) tr += v * v;
        return tr;
    }
    if (n <= 512) {
        const densela::Spectrum spec = densela::sym_eigen_jacobi(H);
        double tr = 0.0;
        for (double lam : spec.values) tr += std::pow(lam, m);
        return tr;
    }
    // P = H^{m-1} by repeated multiplication, then Tr(P H) without forming it
    densela::DenseMatrix P = H;
    for (int k = 2; k < m; ++k) P = densela::matmul(P, H);
    double tr = 0.0;
    for (size_t idx = 0; idx < P.data.size(); ++idx) tr += P.data[idx] * H.data[idx];
    return tr;
}

double arg_gamma_half(double x) {
    // Im ln Gamma(z) at z = 1/2 + ix: shift to |z| >= 10, Stirling tail.
    std::complex<double> z(0.5, x);
    double shift = 0.0;
    while (std::abs(z) < 10.0) {
        shift -= std::arg(z);
        z += 1.0;
    }
    static const double c[5] = {1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0};
    std::complex<double> s = (z - 0.5) * std::log(z) - z;
    std::complex<double> zp = z;
    for (double cj : c) {
        s += cj / zp;
        zp *= z * z;
    }
    return s.imag() + shift;
}

double hatP_asymptotic(int l, double x) {
    if (l < 2) throw std::domain_error("hatP_asymptotic: l >= 2 required");
    if (!(x > 0.0)) throw std::domain_error("hatP_asymptotic: x > 0 required");
    const double envelope = std::sqrt(std::cosh(M_PI * x) / (M_PI * l));
    const double phase = x * std::log(static_cast<double>(l)) + 2.0 * x * std::log(2.0) -
                         arg_gamma_half(x);
    return envelope * std::cos(phase);
}

double unitarity_defect(int l, int m) {
    if (l < 0 || l > 12 || m < 0 || m > 12)
        throw std::domain_error("unitarity_defect: l,m <= 12 required");
    // hatP_l(x^2)^2 grows like x^{4l} before sech wins; extend the cutoff
    // beyond the bare sech(pi x) < 1e-18 point accordingly.
    const double cutoff = 20.0 + 4.0 * std::max(l, m);
    const double I = quadrature::semi_infinite(
        [l, m](double x) { return hatP_eval(l, x) * hatP_eval(m, x) * rho(x); }, cutoff, 1e-12);
    return std::abs(I - (l == m ? 1.0 : 0.0));
}

double multiplication_defect(int l, double x, int K) {
    if (K < l + 10) throw std::domain_error("multiplication_defect: K >= l + 10 required");
    const double x2 = x * x;
    double sum = 0.0;
    double pm = 0.0, p = 1.0; // hatP_{-1}, hatP_0
    double target = 0.0;
    for (int k = 0; k < K; ++k) {
        sum += p / (M_PI * (l + k + 0.5));
        if (k == l) target = p;
        const double pn = (k == 0) ? 0.5 * (1.0 - 4.0 * x2) : hatP_step(k, x2, p, pm);
        pm = p;
        p = pn;
    }
    return std::abs(sum - sech(M_PI * x) * target);
}

} // namespace orthopersist::hilbert
