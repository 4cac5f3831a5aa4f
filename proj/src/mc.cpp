#include "orthopersist/mc.hpp"
#include "orthopersist/densela.hpp"
#include "orthopersist/errors.hpp"
#include "orthopersist/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>

namespace orthopersist::mc {

using densela::DenseMatrix;

int thread_count() {
    if (const char* env = std::getenv("ORTHOPERSIST_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

constexpr int kStreams = 64; // fixed stream count keeps results worker-independent

// Runs fn(stream_index) for each stream on the worker pool; results are
// combined by the caller in stream order.
void for_each_stream(int n_streams, const std::function<void(int)>& fn) {
    const int workers = std::min(thread_count(), n_streams);
    if (workers <= 1) {
        for (int s = 0; s < n_streams; ++s) fn(s);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int s = next.fetch_add(1); s < n_streams; s = next.fetch_add(1)) fn(s);
        });
    }
    for (auto& t : pool) t.join();
}

long stream_share(long samples, int stream) {
    const long base = samples / kStreams;
    return base + (stream < samples % kStreams ? 1 : 0);
}

// Wilson interval half width, z = 1.
double wilson_halfwidth(double phat, long n) {
    if (n == 0) return 0.0;
    const double z2 = 1.0;
    const double denom = 1.0 + z2 / n;
    return std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * static_cast<double>(n) * n)) / denom;
}

} // namespace

DenseMatrix haar_orthogonal(int dim, RngStream& rng) {
    if (dim < 1) throw std::domain_error("haar_orthogonal: dim >= 1 required");
    DenseMatrix A(dim, dim);
    for (double& v : A.data) v = rng.gaussian();

    // Householder QR; accumulate Q explicitly, then fix column signs by
    // the sign of the R diagonal (Mezzadri construction).
    DenseMatrix Q = DenseMatrix::identity(dim);
    std::vector<double> v(dim);
    for (int k = 0; k < dim; ++k) {
        double norm = 0.0;
        for (int i = k; i < dim; ++i) norm += A(i, k) * A(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        const double alpha = A(k, k) >= 0.0 ? -norm : norm;
        double vnorm2 = 0.0;
        for (int i = k; i < dim; ++i) {
            v[i] = A(i, k) - (i == k ? alpha : 0.0);
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        for (int j = k; j < dim; ++j) {
            double dot = 0.0;
            for (int i = k; i < dim; ++i) dot += v[i] * A(i, j);
            const double f = 2.0 * dot / vnorm2;
            for (int i = k; i < dim; ++i) A(i, j) -= f * v[i];
        }
        for (int j = 0; j < dim; ++j) {
            double dot = 0.0;
            for (int i = k; i < dim; ++i) dot += v[i] * Q(i, j);
            const double f = 2.0 * dot / vnorm2;
            for (int i = k; i < dim; ++i) Q(i, j) -= f * v[i];
        }
    }
    // Q currently holds the transpose of the orthogonal factor; transpose
    // and scale columns by sgn(R_kk).
    DenseMatrix O(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) O(i, j) = Q(j, i);
    for (int k = 0; k < dim; ++k) {
        if (A(k, k) < 0.0)
            for (int i = 0; i < dim; ++i) O(i, k) = -O(i, k);
    }
    return O;
}

int sample_real_count(const ensemble::EnsembleParams& params, RngStream& rng) {
    const int dim = 2 * params.n + params.ell;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const DenseMatrix O = haar_orthogonal(dim, rng);
        DenseMatrix M(2 * params.n, 2 * params.n);
        for (int i = 0; i < 2 * params.n; ++i)
            for (int j = 0; j < 2 * params.n; ++j) M(i, j) = O(i, j);
        try {
            return densela::real_eigen_schur(M).real_count;
        } catch (const NoConvergence&) {
            if (attempt == 1) throw;
        }
    }
    return 0; // unreachable
}

MCEstimate estimate_p_no_real(const ensemble::EnsembleParams& params, long samples, uint64_t seed) {
    if (samples < 1) throw std::domain_error("estimate_p_no_real: samples >= 1 required");
    std::vector<long> zeros(kStreams, 0);
    for_each_stream(kStreams, [&](int s) {
        RngStream rng(seed, static_cast<uint64_t>(s));
        const long cnt = stream_share(samples, s);
        long z = 0;
        for (long i = 0; i < cnt; ++i)
            if (sample_real_count(params, rng) == 0) ++z;
        zeros[s] = z;
    });
    long total = 0;
    for (long z : zeros) total += z;
    MCEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.mean = static_cast<double>(total) / samples;
    est.stderr_ = wilson_halfwidth(est.mean, samples);
    return est;
}

std::vector<MCEstimate> estimate_distribution(const ensemble::EnsembleParams& params, long samples,
                                              uint64_t seed) {
    if (samples < 1) throw std::domain_error("estimate_distribution: samples >= 1 required");
    const int bins = params.n + 1;
    std::vector<std::vector<long>> counts(kStreams, std::vector<long>(bins, 0));
    for_each_stream(kStreams, [&](int s) {
        RngStream rng(seed, static_cast<uint64_t>(s));
        const long cnt = stream_share(samples, s);
        for (long i = 0; i < cnt; ++i) {
            const int k = sample_real_count(params, rng) / 2;
            if (k < bins) ++counts[s][k];
        }
    });
    std::vector<MCEstimate> out(bins);
    for (int k = 0; k < bins; ++k) {
        long total = 0;
        for (int s = 0; s < kStreams; ++s) total += counts[s][k];
        out[k].samples = samples;
        out[k].seed = seed;
        out[k].mean = static_cast<double>(total) / samples;
        out[k].stderr_ = wilson_halfwidth(out[k].mean, samples);
    }
    return out;
}

int kac_real_roots(int N, RngStream& rng) {
    if (N < 1 || N > 2000) throw std::domain_error("kac_real_roots: 1 <= N <= 2000 required");
    std::vector<double> a(N + 1);
    for (;;) {
        for (double& c : a) c = rng.gaussian();
        if (std::abs(a[N]) >= 1e-300) break; // DegenerateLeadingCoefficient: resample
    }
    if (N == 1) return 1;
    // companion of the monic polynomial x^N + sum_k (a_k/a_N) x^k:
    // subdiagonal ones, last column -a_k/a_N
    DenseMatrix C(N, N);
    for (int i = 1; i < N; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < N; ++i) C(i, N - 1) = -a[i] / a[N];
    return densela::real_eigen_schur(C).real_count;
}

MCEstimate estimate_kac_real_roots(int N, long samples, uint64_t seed) {
    if (samples < 1) throw std::domain_error("estimate_kac_real_roots: samples >= 1 required");
    std::vector<double> sums(kStreams, 0.0), sq(kStreams, 0.0);
    for_each_stream(kStreams, [&](int s) {
        RngStream rng(seed, static_cast<uint64_t>(s));
        const long cnt = stream_share(samples, s);
        double acc = 0.0, acc2 = 0.0;
        for (long i = 0; i < cnt; ++i) {
            const double r = kac_real_roots(N, rng);
            acc += r;
            acc2 += r * r;
        }
        sums[s] = acc;
        sq[s] = acc2;
    });
    double total = 0.0, total2 = 0.0;
    for (int s = 0; s < kStreams; ++s) {
        total += sums[s];
        total2 += sq[s];
    }
    MCEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.mean = total / samples;
    const double var = std::max(0.0, (total2 - samples * est.mean * est.mean) / (samples - 1.0));
    est.stderr_ = std::sqrt(var / samples);
    return est;
}

MCEstimate estimate_kac_persistence(int N, long samples, uint64_t seed) {
    if (N % 2 != 0) throw std::domain_error("estimate_kac_persistence: N must be even");
    if (samples < 1) throw std::domain_error("estimate_kac_persistence: samples >= 1 required");
    std::vector<long> zeros(kStreams, 0);
    for_each_stream(kStreams, [&](int s) {
        RngStream rng(seed, static_cast<uint64_t>(s));
        const long cnt = stream_share(samples, s);
        long z = 0;
        for (long i = 0; i < cnt; ++i)
            if (kac_real_roots(N, rng) == 0) ++z;
        zeros[s] = z;
    });
    long total = 0;
    for (long z : zeros) total += z;
    MCEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.mean = static_cast<double>(total) / samples;
    est.stderr_ = wilson_halfwidth(est.mean, samples);
    return est;
}

double walk_step(int ell, RngStream& rng) {
    if (ell < 1) throw std::domain_error("walk_step: ell >= 1 required");
    for (;;) {
        // ell = 1 step by inverting the CDF F(x) = (2/pi) arctan(e^{x/2}):
        // x = 2 ln tan(pi u / 2)
        const double u = rng.uniform_pos();
        const double x = 2.0 * std::log(std::tan(1.5707963267948966 * u));
        if (ell == 1) return x;
        // rejection from the ell = 1 envelope: accept with sech^{ell-1}(x/2)
        const double e = std::exp(-std::abs(0.5 * x));
        const double sech_half = 2.0 * e / (1.0 + e * e);
        if (rng.uniform() < std::pow(sech_half, ell - 1)) return x;
    }
}

MCEstimate walk_theta(const WalkConfig& config, uint64_t seed) {
    if (config.ell < 1 || config.samples < 10000 || !(config.bandwidth > 0.0))
        throw std::domain_error("walk_theta: requires ell >= 1, samples >= 10^4, bandwidth > 0");
    constexpr long kMaxSteps = 1 << 20;
    const double h = config.bandwidth;

    // Per-stream sums of the boundary-reflected Epanechnikov kernel at 0.
    std::vector<double> ksum(kStreams, 0.0), ksum2(kStreams, 0.0);
    std::vector<long> converged(kStreams, 0), inwin(kStreams, 0);
    for_each_stream(kStreams, [&](int s) {
        RngStream rng(seed, static_cast<uint64_t>(s));
        const long cnt = stream_share(config.samples, s);
        for (long i = 0; i < cnt; ++i) {
            double pos = 0.0;
            long k = 0;
            do {
                pos += walk_step(config.ell, rng);
                ++k;
            } while (pos > 0.0 && k < kMaxSteps);
            if (pos > 0.0) continue; // capped walk, discarded
            ++converged[s];
            const double u = -pos / h;
            if (u < 1.0) {
                const double kv = 2.0 / h * 0.75 * (1.0 - u * u); // reflection doubles the kernel
                ksum[s] += kv;
                ksum2[s] += kv * kv;
                ++inwin[s];
            }
        }
    });
    double total = 0.0, total2 = 0.0;
    long m = 0, win = 0;
    for (int s = 0; s < kStreams; ++s) {
        total += ksum[s];
        total2 += ksum2[s];
        m += converged[s];
        win += inwin[s];
    }
    if (win < 100) throw BandwidthTooSmall(win);
    MCEstimate est;
    est.samples = config.samples;
    est.seed = seed;
    const double dens = total / m;
    est.mean = 0.5 * dens;
    const double var = std::max(0.0, (total2 - m * dens * dens) / (m - 1.0));
    est.stderr_ = 0.5 * std::sqrt(var / m);
    return est;
}

} // namespace orthopersist::mc
