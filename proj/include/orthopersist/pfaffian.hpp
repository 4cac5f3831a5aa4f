#pragma once

#include <vector>

namespace orthopersist::pfaffian {

/// Skew-symmetric matrix stored as the strict upper triangle, row-major;
/// the implied full matrix satisfies A = -A^T exactly.
struct SkewMatrix {
    int dim = 0;
    std::vector<double> upper; // dim*(dim-1)/2 entries, (i,j) with i<j

    SkewMatrix() = default;
    explicit SkewMatrix(int d) : dim(d), upper(static_cast<size_t>(d) * (d - 1) / 2, 0.0) {}

    static size_t tri_index(int i, int j, int d) {
        // i < j
        return static_cast<size_t>(i) * d - static_cast<size_t>(i) * (i + 1) / 2 + (j - i - 1);
    }
    double at(int i, int j) const {
        if (i == j) return 0.0;
        if (i < j) return upper[tri_index(i, j, dim)];
        return -upper[tri_index(j, i, dim)];
    }
    void set(int i, int j, double v) {
        if (i < j)
            upper[tri_index(i, j, dim)] = v;
        else
            upper[tri_index(j, i, dim)] = -v;
    }
};

/// Pf A by Parlett-Reid skew tridiagonalization with partial pivoting.
/// Odd dimension returns 0.
double pfaffian(const SkewMatrix& A);

/// For even-dimensional A with a_{ij} = 0 whenever i = j (mod 2):
/// Pf A = det { a_{2i,2j+1} }. Throws PatternViolation if a same-parity
/// entry is nonzero.
double checkerboard_pfaffian(const SkewMatrix& A);

} // namespace orthopersist::pfaffian
