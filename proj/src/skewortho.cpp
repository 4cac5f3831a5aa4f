#include "orthopersist/skewortho.hpp"
#include "orthopersist/errors.hpp"
#include "orthopersist/pfaffian.hpp"
#include "orthopersist/specfun.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace orthopersist::skewortho {

using specfun::inc_beta;
using specfun::log_beta;
using specfun::log_gamma;

std::complex<double> pi_eval(int k, int ell, std::complex<double> z) {
    if (k < 0 || ell < 1) throw std::domain_error("pi_eval: k >= 0, ell >= 1 required");
    if (k % 2 == 0) return std::pow(z, k);
    const int m = (k - 1) / 2;
    if (m == 0) return z;
    return std::pow(z, 2 * m + 1) - (2.0 * m / (2.0 * m + ell)) * std::pow(z, 2 * m - 1);
}

std::complex<double> SkewPoly::operator()(std::complex<double> z) const {
    return pi_eval(index, ell, z);
}

double weight_sq(int ell, std::complex<double> z) {
    if (ell < 1) throw std::domain_error("weight_sq: ell >= 1 required");
    const double x = z.real(), y = z.imag();
    const double r2 = x * x + y * y;
    if (r2 > 1.0) return 0.0;
    // |1 - z^2| = sqrt( 4 y^2 + (1 - |z|^2)^2 )
    const double one_m_r2 = 1.0 - r2;
    const double az2 = std::sqrt(4.0 * y * y + one_m_r2 * one_m_r2);
    if (ell == 1) {
        if (az2 == 0.0) return std::numeric_limits<double>::infinity();
        return 1.0 / (2.0 * M_PI * az2);
    }
    const double c = std::min(2.0 * std::abs(y) / az2, 1.0);
    // J = int_c^1 (1-u^2)^{(ell-3)/2} du = (B(1/2,(ell-1)/2) - B(c^2; 1/2,(ell-1)/2)) / 2
    const double b = (ell - 1.0) / 2.0;
    const double J = 0.5 * (std::exp(log_beta(0.5, b)) - inc_beta(c * c, 0.5, b));
    return ell * (ell - 1.0) / (2.0 * M_PI) * std::pow(az2, ell - 2.0) * J;
}

double skew_product_closed(int i, int j, int ell) {
    if (i < 0 || j < 0 || ell < 1) throw std::domain_error("skew_product_closed: bad arguments");
    if (i > j) return -skew_product_closed(j, i, ell);
    if (i % 2 == 0 && j == i + 1) {
        const int k = i / 2;
        return std::exp(log_gamma(ell + 1.0) + log_gamma(2.0 * k + 1.0) -
                        log_gamma(2.0 * k + ell + 1.0));
    }
    return 0.0;
}

double skew_product_real_closed(int i, int j, int ell) {
    if (i < 0 || j < 0 || ell < 1) throw std::domain_error("skew_product_real_closed: bad arguments");
    if (i % 2 == j % 2) return 0.0;
    if (i % 2 != 0) return -skew_product_real_closed(j, i, ell);
    const int p = i / 2, q = (j - 1) / 2;
    const double lg = log_gamma(ell + 1.0) - (ell - 1.0) * std::log(2.0) -
                      2.0 * log_gamma(ell / 2.0) + log_beta(p + q + 0.5, ell);
    return std::exp(lg) / (2.0 * q + ell);
}

namespace {

// w(x) on the real axis is C_ell (1-x^2)^{(ell-2)/2} with
// C_ell = sqrt( ell! / (2^ell Gamma^2(ell/2)) ).
double weight_const(int ell) {
    return std::exp(0.5 * (log_gamma(ell + 1.0) - ell * std::log(2.0) - 2.0 * log_gamma(ell / 2.0)));
}

// epsilon[w pi_k](x) on the real axis, closed forms.
double eps_real(int k, int ell, double x) {
    const double C = weight_const(ell);
    if (k % 2 == 0) {
        const int kk = k / 2;
        const double sgn = (x > 0.0) - (x < 0.0);
        return -0.5 * C * sgn * inc_beta(x * x, kk + 0.5, ell / 2.0);
    }
    const int kk = (k - 1) / 2;
    const double om = std::max(1.0 - x * x, 0.0);
    return C / (2.0 * kk + ell) * std::pow(x, 2 * kk) * std::pow(om, ell / 2.0);
}

double real_part_quad(int i, int j, int ell, int density) {
    const double alpha = (ell - 2.0) / 2.0;
    const quadrature::QuadratureRule rule = quadrature::gauss_jacobi(density, alpha, alpha);
    const double C = weight_const(ell);
    double total = 0.0;
    for (int k = 0; k < density; ++k) {
        const double x = rule.nodes[k];
        const double fi = pi_eval(i, ell, {x, 0.0}).real();
        const double fj = pi_eval(j, ell, {x, 0.0}).real();
        total += rule.weights[k] * C * (fi * eps_real(j, ell, x) - fj * eps_real(i, ell, x));
    }
    return total;
}

// Cached upper-half-disk rule: tensor Gauss-Legendre in (x, t) with
// y = t sqrt(1-x^2); combined weight absorbs the Jacobian, w^2 and the
// factor 4 from symmetry and the 2i * 2i bookkeeping.
struct HalfDiskRule {
    std::vector<double> x, y, w;
};

std::shared_ptr<const HalfDiskRule> half_disk_rule(int ell, int density) {
    static std::map<std::pair<int, int>, std::shared_ptr<const HalfDiskRule>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(ell, density);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const quadrature::QuadratureRule gx = quadrature::gauss_legendre(density);
    auto rule = std::make_shared<HalfDiskRule>();
    rule->x.reserve(static_cast<size_t>(density) * density);
    rule->y.reserve(static_cast<size_t>(density) * density);
    rule->w.reserve(static_cast<size_t>(density) * density);
    for (int a = 0; a < density; ++a) {
        const double x = gx.nodes[a];
        const double s = 1.0 - x * x;
        if (s <= 0.0) continue;
        const double sq = std::sqrt(s);
        for (int b = 0; b < density; ++b) {
            const double t = 0.5 * (gx.nodes[b] + 1.0); // t in (0,1)
            const double y = t * sq;
            const double w2 = weight_sq(ell, {x, y});
            if (w2 == 0.0) continue;
            rule->x.push_back(x);
            rule->y.push_back(y);
            rule->w.push_back(4.0 * gx.weights[a] * 0.5 * gx.weights[b] * sq * w2);
        }
    }
    cache[key] = rule;
    return rule;
}

double complex_part_quad(int i, int j, int ell, int density) {
    const auto rule = half_disk_rule(ell, density);
    double total = 0.0;
    const size_t m = rule->x.size();
    for (size_t k = 0; k < m; ++k) {
        const std::complex<double> z(rule->x[k], rule->y[k]);
        const std::complex<double> f = pi_eval(i, ell, z);
        const std::complex<double> g = pi_eval(j, ell, z);
        total += rule->w[k] * (f.real() * g.imag() - f.imag() * g.real());
    }
    return total;
}

} // namespace

SkewProductParts skew_product_quadrature(int i, int j, int ell, int rule_density) {
    if (i < 0 || j < 0) throw std::domain_error("skew_product_quadrature: indices >= 0 required");
    if (i + j > 16 || ell > 4)
        throw std::domain_error("skew_product_quadrature: i+j <= 16 and ell <= 4 required");
    if (rule_density < 16) throw std::domain_error("skew_product_quadrature: rule density too low");

    SkewProductParts full, coarse;
    const int d2 = (3 * rule_density) / 4;
    full.real_part = real_part_quad(i, j, ell, rule_density);
    full.complex_part = complex_part_quad(i, j, ell, rule_density);
    coarse.real_part = real_part_quad(i, j, ell, d2);
    coarse.complex_part = complex_part_quad(i, j, ell, d2);
    const double est = std::max(std::abs(full.real_part - coarse.real_part),
                                std::abs(full.complex_part - coarse.complex_part));
    if (est > 1e-6) throw AccuracyBudget(est);
    return full;
}

double pfaffian_ratio_p(const ensemble::EnsembleParams& params, int rule_density) {
    if (params.n > 4 || params.ell > 2)
        throw std::domain_error("pfaffian_ratio_p: n <= 4 and ell <= 2 required");
    const int dim = 2 * params.n;
    pfaffian::SkewMatrix num(dim), den(dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            den.set(i, j, skew_product_closed(i, j, params.ell));
            const SkewProductParts parts = skew_product_quadrature(i, j, params.ell, rule_density);
            if (i % 2 == j % 2) {
                if (std::abs(parts.complex_part) > 1e-9)
                    throw AccuracyBudget(std::abs(parts.complex_part));
                num.set(i, j, 0.0); // checkerboard pattern, verified above
            } else {
                num.set(i, j, parts.complex_part);
            }
        }
    }
    return pfaffian::pfaffian(num) / pfaffian::pfaffian(den);
}

} // namespace orthopersist::skewortho
