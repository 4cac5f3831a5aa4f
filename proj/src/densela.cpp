#include "orthopersist/densela.hpp"
#include "orthopersist/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace orthopersist::densela {

double sym_logdet_cholesky(const DenseMatrix& A) {
    if (!A.square()) throw NonSquare();
    const int n = A.rows;
    DenseMatrix L = A;
    double logdet = 0.0;
    for (int i = 0; i < n; ++i) {
        double* Li = &L.data[static_cast<size_t>(i) * n];
        for (int j = 0; j <= i; ++j) {
            const double* Lj = &L.data[static_cast<size_t>(j) * n];
            double s = Li[j];
            for (int m = 0; m < j; ++m) s -= Li[m] * Lj[m];
            if (i == j) {
                if (!(s > 0.0)) throw NotPositiveDefinite(i);
                Li[i] = std::sqrt(s);
                logdet += std::log(s);
            } else {
                Li[j] = s / Lj[j];
            }
        }
    }
    return logdet;
}

Spectrum sym_eigen_jacobi(const DenseMatrix& A) {
    if (!A.square()) throw NonSquare();
    const int n = A.rows;
    DenseMatrix M = A;
    double norm = 0.0;
    for (double v : M.data) norm += v * v;
    norm = std::sqrt(norm);
    const double tol = 1e-14 * norm;

    auto off_norm = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += 2.0 * M(p, q) * M(p, q);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 60 && off_norm() > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = M(p, q);
                if (apq == 0.0) continue;
                const double theta = (M(q, q) - M(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double mkp = M(k, p), mkq = M(k, q);
                    M(k, p) = c * mkp - s * mkq;
                    M(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double mpk = M(p, k), mqk = M(q, k);
                    M(p, k) = c * mpk - s * mqk;
                    M(q, k) = s * mpk + c * mqk;
                }
            }
        }
    }
    Spectrum spec;
    spec.values.resize(n);
    for (int i = 0; i < n; ++i) spec.values[i] = M(i, i);
    std::sort(spec.values.begin(), spec.values.end());
    return spec;
}

namespace {

// Radix-2 norm balancing (similarity transform, eigenvalues unchanged).
void balance(DenseMatrix& a) {
    const int n = a.rows;
    constexpr double radix = 2.0, sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c != 0.0 && r != 0.0) {
                double g = r / radix, f = 1.0;
                const double s = c + r;
                while (c < g) { f *= radix; c *= sqrdx; }
                g = r * radix;
                while (c > g) { f /= radix; c /= sqrdx; }
                if ((c + r) / f < 0.95 * s) {
                    done = false;
                    g = 1.0 / f;
                    for (int j = 0; j < n; ++j) a(i, j) *= g;
                    for (int j = 0; j < n; ++j) a(j, i) *= f;
                }
            }
        }
    }
}

// Hessenberg reduction by stabilized elementary transformations.
void hessenberg(DenseMatrix& a) {
    const int n = a.rows;
    for (int m = 1; m < n - 1; ++m) {
        double x = 0.0;
        int i = m;
        for (int j = m; j < n; ++j) {
            if (std::abs(a(j, m - 1)) > std::abs(x)) {
                x = a(j, m - 1);
                i = j;
            }
        }
        if (i != m) {
            for (int j = m - 1; j < n; ++j) std::swap(a(i, j), a(m, j));
            for (int j = 0; j < n; ++j) std::swap(a(j, i), a(j, m));
        }
        if (x != 0.0) {
            for (i = m + 1; i < n; ++i) {
                double y = a(i, m - 1);
                if (y != 0.0) {
                    y /= x;
                    a(i, m - 1) = 0.0;
                    for (int j = m; j < n; ++j) a(i, j) -= y * a(m, j);
                    for (int j = 0; j < n; ++j) a(j, m) += y * a(j, i);
                }
            }
        }
    }
    for (int i = 2; i < n; ++i)
        for (int j = 0; j < i - 1; ++j) a(i, j) = 0.0;
}

inline double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Francis double-shift QR on an upper Hessenberg matrix (hqr lineage:
// Martin-Peters-Wilkinson via EISPACK). Eigenvalues only; row/column
// updates stay inside the active window.
void hqr(DenseMatrix& a, std::vector<double>& wr, std::vector<double>& wi) {
    const int n = a.rows;
    wr.assign(n, 0.0);
    wi.assign(n, 0.0);
    if (n == 0) return;

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

    int nn = n - 1;
    double t = 0.0;
    long itn = 30L * n;
    while (nn >= 0) {
        int its = 0;
        int l;
        for (;;) {
            for (l = nn; l >= 1; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) + s == s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 0) l = 0;
            double x = a(nn, nn);
            if (l == nn) {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                --nn;
                break;
            }
            double y = a(nn - 1, nn - 1);
            double w = a(nn, nn - 1) * a(nn - 1, nn);
            if (l == nn - 1) {
                double p = 0.5 * (y - x);
                double q = p * p + w;
                double z = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) {
                    z = p + sign_of(z, p);
                    wr[nn - 1] = wr[nn] = x + z;
                    if (z != 0.0) wr[nn] = x - w / z;
                    wi[nn - 1] = wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = wr[nn] = x + p;
                    wi[nn - 1] = z;
                    wi[nn] = -z;
                }
                nn -= 2;
                break;
            }
            if (itn <= 0) throw NoConvergence(nn);
            if (its == 10 || its == 20) {
                // exceptional shift
                t += x;
                for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                y = x = 0.75 * s;
                w = -0.4375 * s * s;
            }
            ++its;
            --itn;
            int m;
            double p = 0.0, q = 0.0, r = 0.0;
            for (m = nn - 2; m >= l; --m) {
                double z = a(m, m);
                double rr = x - z;
                double ss = y - z;
                p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
                q = a(m + 1, m + 1) - z - rr - ss;
                r = a(m + 2, m + 1);
                double s = std::abs(p) + std::abs(q) + std::abs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) +
                                                std::abs(a(m + 1, m + 1)));
                if (u + v == v) break;
            }
            if (m < l) m = l;
            for (int i = m + 2; i <= nn; ++i) {
                a(i, i - 2) = 0.0;
                if (i != m + 2) a(i, i - 3) = 0.0;
            }
            for (int k = m; k <= nn - 1; ++k) {
                if (k != m) {
                    p = a(k, k - 1);
                    q = a(k + 1, k - 1);
                    r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x == 0.0) continue;
                    p /= x;
                    q /= x;
                    r /= x;
                }
                double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                if (k == m) {
                    if (l != m) a(k, k - 1) = -a(k, k - 1);
                } else {
                    a(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                double z = r / s;
                q /= p;
                r /= p;
                double* row_k = &a.data[static_cast<size_t>(k) * n];
                double* row_k1 = &a.data[static_cast<size_t>(k + 1) * n];
                if (k != nn - 1) {
                    double* row_k2 = &a.data[static_cast<size_t>(k + 2) * n];
                    for (int j = k; j <= nn; ++j) {
                        const double pp = row_k[j] + q * row_k1[j] + r * row_k2[j];
                        row_k[j] -= pp * x;
                        row_k1[j] -= pp * y;
                        row_k2[j] -= pp * z;
                    }
                    const int mmin = std::min(nn, k + 3);
                    for (int i = l; i <= mmin; ++i) {
                        double* row_i = &a.data[static_cast<size_t>(i) * n];
                        const double pp = x * row_i[k] + y * row_i[k + 1] + z * row_i[k + 2];
                        row_i[k] -= pp;
                        row_i[k + 1] -= pp * q;
                        row_i[k + 2] -= pp * r;
                    }
                } else {
                    for (int j = k; j <= nn; ++j) {
                        const double pp = row_k[j] + q * row_k1[j];
                        row_k[j] -= pp * x;
                        row_k1[j] -= pp * y;
                    }
                    const int mmin = std::min(nn, k + 3);
                    for (int i = l; i <= mmin; ++i) {
                        double* row_i = &a.data[static_cast<size_t>(i) * n];
                        const double pp = x * row_i[k] + y * row_i[k + 1];
                        row_i[k] -= pp;
                        row_i[k + 1] -= pp * q;
                    }
                }
            }
        }
    }
}

} // namespace

EigenList real_eigen_schur(const DenseMatrix& A) {
    if (!A.square()) throw NonSquare();
    for (double v : A.data)
        if (!std::isfinite(v)) throw std::invalid_argument("real_eigen_schur: non-finite entry");
    DenseMatrix M = A;
    balance(M);
    hessenberg(M);
    std::vector<double> wr, wi;
    hqr(M, wr, wi);
    EigenList out;
    out.pairs.reserve(wr.size());
    for (size_t i = 0; i < wr.size(); ++i) {
        out.pairs.emplace_back(wr[i], wi[i]);
        if (wi[i] == 0.0) ++out.real_count;
    }
    return out;
}

std::vector<double> elementary_symmetric(std::span<const double> values) {
    const size_t n = values.size();
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    for (size_t j = 0; j < n; ++j) {
        for (size_t k = std::min(j + 1, n); k >= 1; --k) e[k] += values[j] * e[k - 1];
    }
    return e;
}

std::pair<double, int> logdet_lu(DenseMatrix A) {
    if (!A.square()) throw NonSquare();
    const int n = A.rows;
    int sign = 1;
    double logabs = 0.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
        if (A(piv, k) == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(k, j));
            sign = -sign;
        }
        const double akk = A(k, k);
        logabs += std::log(std::abs(akk));
        if (akk < 0.0) sign = -sign;
        for (int i = k + 1; i < n; ++i) {
            const double f = A(i, k) / akk;
            if (f == 0.0) continue;
            A(i, k) = f;
            for (int j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
        }
    }
    return {logabs, sign};
}

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matmul: shape mismatch");
    DenseMatrix C(A.rows, B.cols);
    const int n = A.rows, m = B.cols, k = A.cols;
    for (int i = 0; i < n; ++i) {
        double* Ci = &C.data[static_cast<size_t>(i) * m];
        const double* Ai = &A.data[static_cast<size_t>(i) * k];
        for (int p = 0; p < k; ++p) {
            const double aip = Ai[p];
            if (aip == 0.0) continue;
            const double* Bp = &B.data[static_cast<size_t>(p) * m];
            for (int j = 0; j < m; ++j) Ci[j] += aip * Bp[j];
        }
    }
    return C;
}

} // namespace orthopersist::densela
