#pragma once

#include <cstdint>
#include <random>

namespace satq {

/// Deterministic RNG used wherever results must be reproducible.
///
/// The raw stream is std::mt19937_64 (seeded directly with the 64-bit seed).
/// Bounded and real draws are implemented here instead of via
/// std::uniform_*_distribution, whose output differs between standard
/// library implementations:
///   - bounded(n): draw 64-bit words, reject values below 2^64 mod n,
///     return word % n (unbiased).
///   - unit(): top 53 bits of one word, scaled to [0,1).
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    /// Uniform integer in [0, n). n must be nonzero.
    uint64_t bounded(uint64_t n) {
        const uint64_t threshold = (0 - n) % n; // 2^64 mod n
        for (;;) {
            const uint64_t r = gen_();
            if (r >= threshold)
                return r % n;
        }
    }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Fair coin: one bounded(2) draw.
    bool coin() { return bounded(2) == 1; }

  private:
    std::mt19937_64 gen_;
};

/// SplitMix64 step; used to derive per-trial seeds from (solver seed,
/// instance id, trial) without correlating the streams.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// FNV-1a over a byte string; stable across platforms.
inline uint64_t fnv1a(const char* data, size_t len) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (size_t i = 0; i < len; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace satq
