#include "orthopersist/ensemble.hpp"
#include "orthopersist/densela.hpp"
#include "orthopersist/errors.hpp"
#include "orthopersist/specfun.hpp"

#include <quadmath.h>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace orthopersist::ensemble {

using densela::DenseMatrix;
using specfun::log_beta;
using specfun::log_gamma;
using specfun::log_gamma_sum;

namespace {

void check(const EnsembleParams& p) {
    if (p.n < 1 || p.ell < 1) throw std::domain_error("EnsembleParams: n >= 1 and ell >= 1 required");
}

} // namespace

DenseMatrix hankel_matrix(const EnsembleParams& params) {
    check(params);
    const int n = params.n;
    const double ell = params.ell;
    const double log_norm = (ell - 1.0) * std::log(2.0) + 2.0 * log_gamma(ell / 2.0);
    // constant along antidiagonals: one Beta evaluation per p+q value
    std::vector<double> anti(2 * n - 1);
    for (int s = 0; s <= 2 * n - 2; ++s)
        anti[s] = std::exp(log_beta(s + 0.5, ell) - log_norm);
    DenseMatrix H(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) H(p, q) = anti[p + q];
    return H;
}

std::vector<double> weight_diag(const EnsembleParams& params) {
    check(params);
    std::vector<double> d(params.n);
    for (int p = 0; p < params.n; ++p)
        d[p] = std::exp(0.5 * (log_gamma(2.0 * p + params.ell) - log_gamma(2.0 * p + 1.0)));
    return d;
}

DenseMatrix weighted_hankel(const EnsembleParams& params) {
    DenseMatrix H = hankel_matrix(params);
    const std::vector<double> d = weight_diag(params);
    const int n = params.n;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) H(p, q) *= d[p] * d[q];
    // kill rounding asymmetry; the eigensolver needs exact symmetry
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            const double v = 0.5 * (H(p, q) + H(q, p));
            H(p, q) = H(q, p) = v;
        }
    return H;
}

double p_no_real(const EnsembleParams& params) {
    DenseMatrix A = weighted_hankel(params);
    const int n = params.n;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) A(p, q) = (p == q ? 1.0 : 0.0) - A(p, q);
    return std::exp(densela::sym_logdet_cholesky(A));
}

double mgf(const EnsembleParams& params, double s) {
    if (!std::isfinite(s)) throw std::domain_error("mgf: s must be finite");
    const densela::Spectrum spec = densela::sym_eigen_jacobi(weighted_hankel(params));
    const double c = 1.0 - std::exp(2.0 * s);
    double prod = 1.0;
    for (double lam : spec.values) prod *= 1.0 - c * lam;
    return prod;
}

namespace {

// The all-real bin is the product of all eigenvalues of D H D, the
// smallest of which sit near eps/lambda ~ 1e-6 relative in double
// (lambda_min ~ 1e-10 already at n = 8). The distribution therefore runs
// the same Jacobi + triangle recurrence in binary128 for small n.
constexpr int kQuadPrecisionMaxN = 48;

std::vector<__float128> quad_eigen_jacobi(std::vector<__float128>& A, int n) {
    __float128 norm = 0;
    for (int i = 0; i < n * n; ++i) norm += A[i] * A[i];
    norm = sqrtq(norm);
    const __float128 tol = norm * 1e-32Q;
    auto off = [&]() {
        __float128 s = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += 2 * A[p * n + q] * A[p * n + q];
        return sqrtq(s);
    };
    for (int sweep = 0; sweep < 80 && off() > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const __float128 apq = A[p * n + q];
                if (apq == 0) continue;
                const __float128 theta = (A[q * n + q] - A[p * n + p]) / (2 * apq);
                const __float128 t =
                    (theta >= 0 ? 1 : -1) / (fabsq(theta) + sqrtq(theta * theta + 1));
                const __float128 c = 1 / sqrtq(t * t + 1);
                const __float128 s = t * c;
                for (int k = 0; k < n; ++k) {
                    const __float128 akp = A[k * n + p], akq = A[k * n + q];
                    A[k * n + p] = c * akp - s * akq;
                    A[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const __float128 apk = A[p * n + k], aqk = A[q * n + k];
                    A[p * n + k] = c * apk - s * aqk;
                    A[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<__float128> lam(n);
    for (int i = 0; i < n; ++i) lam[i] = A[i * n + i];
    return lam;
}

std::vector<double> distribution_probs_quad(const EnsembleParams& params) {
    const int n = params.n;
    const __float128 ell = params.ell;
    const __float128 log_norm = (ell - 1) * logq(2.0Q) + 2 * lgammaq(ell / 2);
    std::vector<__float128> d(n);
    for (int p = 0; p < n; ++p)
        d[p] = expq((lgammaq(2 * p + ell) - lgammaq(2 * p + 1.0Q)) / 2);
    std::vector<__float128> A(static_cast<size_t>(n) * n);
    for (int p = 0; p < n; ++p)
        for (int q = p; q < n; ++q) {
            const __float128 lb =
                lgammaq(p + q + 0.5Q) + lgammaq(ell) - lgammaq(p + q + 0.5Q + ell);
            A[p * n + q] = A[q * n + p] = d[p] * d[q] * expq(lb - log_norm);
        }
    std::vector<__float128> lam = quad_eigen_jacobi(A, n);
    __float128 prod = 1;
    std::vector<__float128> ratios(n);
    for (int j = 0; j < n; ++j) {
        if (static_cast<double>(lam[j]) >= 1.0) throw SpectralRadiusExceeded(static_cast<double>(lam[j]));
        prod *= 1 - lam[j];
        ratios[j] = lam[j] / (1 - lam[j]);
    }
    std::vector<__float128> e(n + 1, 0);
    e[0] = 1;
    for (int j = 0; j < n; ++j)
        for (int k = std::min(j + 1, n); k >= 1; --k) e[k] += ratios[j] * e[k - 1];
    std::vector<double> probs(n + 1);
    for (int k = 0; k <= n; ++k) probs[k] = static_cast<double>(prod * e[k]);
    return probs;
}

} // namespace

RealCountDistribution real_count_distribution(const EnsembleParams& params) {
    check(params);
    RealCountDistribution dist;
    dist.params = params;
    const int n = params.n;
    if (n <= kQuadPrecisionMaxN) {
        dist.probs = distribution_probs_quad(params);
        return dist;
    }
    const densela::Spectrum spec = densela::sym_eigen_jacobi(weighted_hankel(params));
    double prod = 1.0;
    std::vector<double> ratios(n);
    for (int j = 0; j < n; ++j) {
        const double lam = spec.values[j];
        if (lam >= 1.0) throw SpectralRadiusExceeded(lam);
        prod *= 1.0 - lam;
        ratios[j] = lam / (1.0 - lam);
    }
    std::vector<double> e = densela::elementary_symmetric(ratios);
    dist.probs.resize(n + 1);
    for (int k = 0; k <= n; ++k) dist.probs[k] = prod * e[k];
    return dist;
}

double log_p_all_real(const EnsembleParams& params) {
    check(params);
    const long n = params.n;
    const double ell = params.ell;
    return log_gamma_sum(n, ell / 2.0) + log_gamma_sum(n, (ell + 1.0) / 2.0) +
           log_gamma_sum(n, ell) - log_gamma_sum(n, n + ell - 0.5) -
           2.0 * n * log_gamma(ell / 2.0);
}

} // namespace orthopersist::ensemble
