#pragma once

#include <functional>
#include <vector>

namespace orthopersist::quadrature {

enum class Domain { interval, semi_infinite };

/// Nodes/weights plus the domain they integrate over.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    Domain domain = Domain::interval;
    double a = -1.0, b = 1.0; // interval endpoints when domain == interval
};

/// Tanh-sinh quadrature on [a,b]. Levels are halved-step trapezoid
/// refinements; stops once two consecutive levels agree to abs_tol.
/// Tolerates integrable endpoint singularities (non-finite integrand
/// values at clustered endpoints are dropped).
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-13, int max_level = 12,
                 double* err_estimate = nullptr);

/// Integral over [0, inf): x = sinh(t) mapping, then tanh-sinh on doubling
/// panels in t until a panel contributes less than abs_tol. `cutoff` caps
/// the upper x limit (integrand assumed negligible beyond it).
double semi_infinite(const std::function<double(double)>& f, double cutoff,
                     double abs_tol = 1e-13);

/// n-point Gauss-Legendre rule on [-1,1].
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Jacobi rule for weight (1-x)^alpha (1+x)^beta on [-1,1].
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

} // namespace orthopersist::quadrature
