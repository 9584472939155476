#pragma once

#include <cstdint>

namespace mmc {

// splitmix64; the fixed public hash behind all seed derivation.
constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Derives a child seed from (parent seed, index).  Used for per-trial and
// per-repetition streams so parallel and serial runs produce identical
// results.
constexpr uint64_t mix_seed(uint64_t seed, uint64_t index) {
    return splitmix64(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
}

// xoshiro256** with a splitmix64-expanded seed.  All sampling goes through
// this engine with explicit integer arithmetic; no std:: distributions, so
// streams are identical on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& w : s_) {
            x = splitmix64(x);
            w = x;
        }
        // xoshiro must not start at the all-zero state
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Unbiased uniform draw in [0, bound) by rejection.
    uint64_t below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    uint32_t bit() { return static_cast<uint32_t>(next() >> 63); }

private:
    static constexpr uint64_t rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    uint64_t s_[4];
};

}  // namespace mmc
