#pragma once

#include <cmath>
#include <cstdint>

namespace orthopersist::mc {

// Frozen generator stack: splitmix64 seeding, xoshiro256++ stream with
// long-jump substreams, Box-Muller Gaussians. Identical (seed, stream)
// reproduce identical draws on every platform.

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t s) : state(s) {}
    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

class RngStream {
public:
    uint64_t seed = 0;
    uint64_t stream_index = 0;

    RngStream(uint64_t seed_, uint64_t stream) : seed(seed_), stream_index(stream) {
        SplitMix64 sm(seed_);
        for (auto& w : s_) w = sm.next();
        for (uint64_t k = 0; k < stream; ++k) long_jump();
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0,1].
    double uniform_pos() { return 1.0 - uniform(); }

    /// Standard normal, Box-Muller with cached spare.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double phi = 6.283185307179586476925286766559 * uniform();
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

private:
    uint64_t s_[4] = {};
    double spare_ = 0.0;
    bool has_spare_ = false;

    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    // 2^192 step jump (Blackman/Vigna reference constants)
    void long_jump() {
        static constexpr uint64_t J[4] = {0x76E15D3EFEFDCBBFULL, 0xC5004E441C522FB3ULL,
                                          0x77710069854EE241ULL, 0x39109BB02ACBE635ULL};
        uint64_t t[4] = {0, 0, 0, 0};
        for (uint64_t jc : J) {
            for (int b = 0; b < 64; ++b) {
                if (jc & (1ULL << b)) {
                    t[0] ^= s_[0];
                    t[1] ^= s_[1];
                    t[2] ^= s_[2];
                    t[3] ^= s_[3];
                }
                next_u64();
            }
        }
        s_[0] = t[0];
        s_[1] = t[1];
        s_[2] = t[2];
        s_[3] = t[3];
    }
};

} // namespace orthopersist::mc
