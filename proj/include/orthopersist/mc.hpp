#pragma once

#include "orthopersist/ensemble.hpp"
#include "orthopersist/matrix.hpp"
#include "orthopersist/rng.hpp"

#include <cstdint>
#include <vector>

namespace orthopersist::mc {

/// Reproducible Monte Carlo result. For proportions, stderr is the
/// Wilson-interval half width (z = 1); otherwise sample sd / sqrt(n).
struct MCEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long samples = 0;
    uint64_t seed = 0;
};

struct WalkConfig {
    int ell = 1;
    long samples = 100000;
    double bandwidth = 0.05;
};

/// Number of worker threads: ORTHOPERSIST_THREADS if set, else hardware.
int thread_count();

/// Exactly Haar-distributed random orthogonal matrix: QR of an iid
/// Gaussian matrix with the R-diagonal sign correction.
densela::DenseMatrix haar_orthogonal(int dim, RngStream& rng);

/// Draws O(2n+ell), truncates to the top-left 2n x 2n block, returns the
/// structurally exact count of real eigenvalues (always even).
int sample_real_count(const ensemble::EnsembleParams& params, RngStream& rng);

MCEstimate estimate_p_no_real(const ensemble::EnsembleParams& params, long samples, uint64_t seed);

std::vector<MCEstimate> estimate_distribution(const ensemble::EnsembleParams& params, long samples,
                                              uint64_t seed);

/// Real-root count of a random polynomial with N+1 iid standard Gaussian
/// coefficients, via the balanced companion matrix.
int kac_real_roots(int N, RngStream& rng);

MCEstimate estimate_kac_real_roots(int N, long samples, uint64_t seed);

/// Fraction of Kac polynomials of even degree N with no real root.
MCEstimate estimate_kac_persistence(int N, long samples, uint64_t seed);

/// First-passage estimator for the decay exponent theta(ell): random walk
/// with steps of density sech^ell(x/2) / (2 B(ell/2,1/2)), stopped at the
/// first entry into (-inf, 0]; theta = (1/2) * density of the stopped
/// position at 0 (boundary-reflected Epanechnikov kernel).
MCEstimate walk_theta(const WalkConfig& config, uint64_t seed);

/// Draws one step of the sech^ell walk (inverse CDF for ell = 1,
/// rejection from the ell = 1 envelope otherwise). Exposed for tests.
double walk_step(int ell, RngStream& rng);

} // namespace orthopersist::mc
