#pragma once

#include <cmath>
#include <cstdint>

namespace rbc {

// Portable deterministic RNG: xoshiro256** seeded through splitmix64.
// Every randomized entry point takes an explicit 64-bit seed; per-trial
// streams are derived as stream(seed, index) so trials never share state.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // Independent substream: mixes the stream index into the seed before
    // expansion, so (seed, 0), (seed, 1), ... are decorrelated.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t sm = index;
        return Rng(seed ^ splitmix64(sm));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // true with probability p; consumes exactly one 64-bit draw.
    // The threshold p*2^64 is formed with ldexp (an exact exponent shift),
    // then truncated, so the decision is bit-reproducible.
    bool bernoulli(double p) {
        std::uint64_t draw = next_u64();
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return draw < static_cast<std::uint64_t>(std::ldexp(p, 64));
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace rbc
