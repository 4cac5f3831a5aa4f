#include "orthopersist/pfaffian.hpp"
#include "orthopersist/densela.hpp"
#include "orthopersist/errors.hpp"
#include "orthopersist/matrix.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace orthopersist::pfaffian {

double pfaffian(const SkewMatrix& A) {
    const int n = A.dim;
    if (n == 0) return 1.0;
    if (n % 2 != 0) return 0.0;

    densela::DenseMatrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = A.at(i, j);

    double pf = 1.0;
    for (int k = 0; k + 1 < n; k += 2) {
        // pivot: largest |M(i,k)| over i > k
        int piv = k + 1;
        for (int i = k + 2; i < n; ++i)
            if (std::abs(M(i, k)) > std::abs(M(piv, k))) piv = i;
        if (piv != k + 1) {
            for (int j = 0; j < n; ++j) std::swap(M(piv, j), M(k + 1, j));
            for (int j = 0; j < n; ++j) std::swap(M(j, piv), M(j, k + 1));
            pf = -pf;
        }
        const double akk1 = M(k, k + 1);
        if (akk1 == 0.0) return 0.0;
        pf *= akk1;
        // congruence transform zeroing column k below row k+1
        // (tau_i = M(i,k) / M(k+1,k); row k+1 and column k+1 stay fixed)
        for (int i = k + 2; i < n; ++i) {
            const double tau = -M(i, k) / akk1;
            if (tau == 0.0) continue;
            for (int j = k + 1; j < n; ++j) M(i, j) -= tau * M(k + 1, j);
            for (int j = k + 1; j < n; ++j) M(j, i) -= tau * M(j, k + 1);
        }
    }
    return pf;
}

double checkerboard_pfaffian(const SkewMatrix& A) {
    const int dim = A.dim;
    if (dim % 2 != 0) throw PatternViolation("checkerboard_pfaffian: dimension must be even");
    const int n = dim / 2;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            if ((i % 2) == (j % 2) && A.at(i, j) != 0.0)
                throw PatternViolation("checkerboard_pfaffian: nonzero same-parity entry (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
    densela::DenseMatrix B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = A.at(2 * i, 2 * j + 1);
    auto [logabs, sign] = densela::logdet_lu(B);
    if (sign == 0) return 0.0;
    return sign * std::exp(logabs);
}

} // namespace orthopersist::pfaffian
