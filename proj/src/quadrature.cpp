#include "orthopersist/quadrature.hpp"
#include "orthopersist/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace orthopersist::quadrature {

double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_level, double* err_estimate) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    if (half == 0.0) {
        if (err_estimate) *err_estimate = 0.0;
        return 0.0;
    }
    constexpr double t_max = 3.8; // tanh((pi/2) sinh 3.8) == 1 - ~1e-15 in double
    const double pi_half = 1.5707963267948966;

    auto eval = [&](double t, double& w) {
        const double cs = std::cosh(t);
        const double sn = std::sinh(t);
        const double u = pi_half * sn;
        const double ch = std::cosh(u);
        const double x = std::tanh(u);
        w = half * pi_half * cs / (ch * ch);
        const double v = f(mid + half * x);
        return std::isfinite(v) ? v : 0.0;
    };

    // level 0: trapezoid with h = 1 over all integer t in [-t_max, t_max];
    // each further level halves h and adds the odd multiples of the new h.
    double h = 1.0;
    double w;
    double sum = eval(0.0, w) * w;
    for (int k = 1; k <= static_cast<int>(t_max); ++k) {
        double w1, w2;
        sum += eval(k * h, w1) * w1 + eval(-k * h, w2) * w2;
    }
    double prev = sum * h;
    double result = prev;
    double err = std::abs(prev);
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        const int kmax = static_cast<int>(std::floor(t_max / h));
        for (int k = 1; k <= kmax; k += 2) {
            double w1, w2;
            sum += eval(k * h, w1) * w1 + eval(-k * h, w2) * w2;
        }
        result = sum * h;
        err = std::abs(result - prev);
        prev = result;
        if (level >= 3 && err < abs_tol) break;
    }
    if (err_estimate) *err_estimate = err;
    return result;
}

double semi_infinite(const std::function<double(double)>& f, double cutoff,
                     double abs_tol) {
    // x = sinh(t): dx = cosh(t) dt; panels in t of doubling width.
    auto g = [&](double t) {
        const double x = std::sinh(t);
        return f(x) * std::cosh(t);
    };
    const double t_end = std::asinh(cutoff);
    double total = 0.0;
    double t0 = 0.0, width = 1.0;
    while (t0 < t_end) {
        const double t1 = std::min(t0 + width, t_end);
        total += tanh_sinh(g, t0, t1, abs_tol * 0.1);
        t0 = t1;
        width *= 2.0;
    }
    return total;
}

namespace {

// P_n^{(alpha,beta)}(x) and its derivative by the three-term recurrence.
void jacobi_pd(int n, double alpha, double beta, double x, double& P, double& dP) {
    if (n == 0) {
        P = 1.0;
        dP = 0.0;
        return;
    }
    double pm = 1.0;
    double p = 0.5 * ((alpha + beta + 2.0) * x + alpha - beta);
    for (int k = 1; k < n; ++k) {
        const double kk = k;
        const double a1 = 2.0 * (kk + 1.0) * (kk + alpha + beta + 1.0) * (2.0 * kk + alpha + beta);
        const double a2 = (2.0 * kk + alpha + beta + 1.0) * (alpha * alpha - beta * beta);
        const double a3 = (2.0 * kk + alpha + beta) * (2.0 * kk + alpha + beta + 1.0) *
                          (2.0 * kk + alpha + beta + 2.0);
        const double a4 = 2.0 * (kk + alpha) * (kk + beta) * (2.0 * kk + alpha + beta + 2.0);
        const double pn = ((a2 + a3 * x) * p - a4 * pm) / a1;
        pm = p;
        p = pn;
    }
    P = p;
    const double nn = n;
    // (2n+a+b)(1-x^2) P'_n = n[a-b-(2n+a+b)x] P_n + 2(n+a)(n+b) P_{n-1}
    dP = (nn * (alpha - beta - (2.0 * nn + alpha + beta) * x) * p +
          2.0 * (nn + alpha) * (nn + beta) * pm) /
         ((2.0 * nn + alpha + beta) * (1.0 - x * x));
}

} // namespace

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw std::domain_error("gauss_jacobi: n >= 1 required");
    if (alpha <= -1.0 || beta <= -1.0)
        throw std::domain_error("gauss_jacobi: exponents must exceed -1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    rule.domain = Domain::interval;

    // Newton with deflation, roots found from x = 1 downwards.
    for (int k = 0; k < n; ++k) {
        // Chebyshev-like initial guess, nudged toward the previous root
        double x = std::cos(M_PI * (2.0 * k + 1.0) / (2.0 * n));
        if (k > 0) x = 0.5 * (x + rule.nodes[k - 1]);
        for (int it = 0; it < 100; ++it) {
            double P, dP;
            jacobi_pd(n, alpha, beta, x, P, dP);
            double defl = 0.0;
            for (int j = 0; j < k; ++j) defl += 1.0 / (x - rule.nodes[j]);
            const double dx = -P / (dP - P * defl);
            x += dx;
            if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
        }
        rule.nodes[k] = x;
    }
    // w_i = fac / [ P'_n(x_i)^2 (1 - x_i^2) ],
    // fac = 2^{a+b+1} G(n+a+1) G(n+b+1) / (G(n+1) G(n+a+b+1))
    using specfun::log_gamma;
    const double logfac = (alpha + beta + 1.0) * std::log(2.0) + log_gamma(n + alpha + 1.0) +
                          log_gamma(n + beta + 1.0) - log_gamma(n + 1.0) -
                          log_gamma(n + alpha + beta + 1.0);
    const double fac = std::exp(logfac);
    for (int k = 0; k < n; ++k) {
        double P, dP;
        jacobi_pd(n, alpha, beta, rule.nodes[k], P, dP);
        rule.weights[k] = fac / (dP * dP * (1.0 - rule.nodes[k] * rule.nodes[k]));
    }
    return rule;
}

} // namespace orthopersist::quadrature
