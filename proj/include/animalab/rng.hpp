#pragma once

#include <cstdint>

namespace animalab {

/// Counter-based stream RNG (splitmix64 core). A stream is identified by
/// (seed, stream_id); identical identifiers reproduce identical output
/// regardless of what other streams do, so parallel experiments stay
/// reproducible independent of scheduling.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream_id) {
        // Mix the stream id into the key so streams are statistically split.
        state_ = mix(seed ^ mix(stream_id ^ 0x9e3779b97f4a7c15ULL));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Exact uniform draw in [0, n), n >= 1, by rejection.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = n * (~0ULL / n); // multiple of n
        for (;;) {
            std::uint64_t w = next_u64();
            if (w < limit) return w % n;
        }
    }

    /// Exact Bernoulli(p/q) for integer 0 <= p <= q.
    bool bernoulli_ratio(std::uint64_t p, std::uint64_t q) {
        return next_below(q) < p;
    }

    /// Geometric(1/2) on {1,2,...}: number of fair coin flips up to and
    /// including the first head, read off trailing zero bits.
    int geometric_half() {
        int g = 1;
        for (;;) {
            std::uint64_t w = next_u64();
            if (w != 0) return g + __builtin_ctzll(w);
            g += 64;
        }
    }

    /// Uniform trit (0,1,2), exact.
    int trit() { return static_cast<int>(next_below(3)); }

    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace animalab
