#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace orthopersist::densela {

/// Row-major dense real matrix.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    bool square() const { return rows == cols; }

    static DenseMatrix identity(int n) {
        DenseMatrix I(n, n);
        for (int i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }
};

/// Eigenvalues of a symmetric matrix, ascending.
struct Spectrum {
    std::vector<double> values;
};

/// Eigenvalues of a real nonsymmetric matrix; nonreal ones come in
/// conjugate pairs. real_count is structurally exact (from the Schur
/// 1x1 / 2x2 block classification), not tolerance based.
struct EigenList {
    std::vector<std::pair<double, double>> pairs; // (re, im)
    int real_count = 0;
};

} // namespace orthopersist::densela
