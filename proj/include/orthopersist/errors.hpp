#pragma once

#include <stdexcept>
#include <string>

namespace orthopersist {

// Numerical failures (distinct from precondition violations, which use
// std::domain_error / std::invalid_argument).

struct NotPositiveDefinite : std::runtime_error {
    int pivot_index;
    explicit NotPositiveDefinite(int idx)
        : std::runtime_error("matrix not positive definite at pivot " + std::to_string(idx)),
          pivot_index(idx) {}
};

struct NoConvergence : std::runtime_error {
    int eigen_index;
    explicit NoConvergence(int idx)
        : std::runtime_error("QR iteration failed to converge at eigenvalue " + std::to_string(idx)),
          eigen_index(idx) {}
};

struct NonSquare : std::invalid_argument {
    NonSquare() : std::invalid_argument("matrix is not square") {}
};

struct SpectralRadiusExceeded : std::runtime_error {
    double lambda_max;
    explicit SpectralRadiusExceeded(double lam)
        : std::runtime_error("spectral radius >= 1 (lambda_max = " + std::to_string(lam) + ")"),
          lambda_max(lam) {}
};

struct PatternViolation : std::invalid_argument {
    explicit PatternViolation(const std::string& what) : std::invalid_argument(what) {}
};

struct AccuracyBudget : std::runtime_error {
    double estimate;
    explicit AccuracyBudget(double est)
        : std::runtime_error("quadrature error estimate " + std::to_string(est) + " exceeds budget"),
          estimate(est) {}
};

struct BandwidthTooSmall : std::runtime_error {
    explicit BandwidthTooSmall(long in_window)
        : std::runtime_error("only " + std::to_string(in_window) + " samples in kernel window") {}
};

struct DegenerateAbscissae : std::invalid_argument {
    DegenerateAbscissae() : std::invalid_argument("abscissae degenerate for least-squares fit") {}
};

} // namespace orthopersist
