#pragma once

#include <array>
#include <cstdint>

namespace qct {

// Splittable 64-bit mixer (Steele et al., SplitMix64). Used for seeding and
// for deriving independent substreams from a (seed, stream-index) pair so
// results do not depend on evaluation order.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

/// Derives the seed of an independent substream from a base seed and a
/// stream index. Fixed algorithm, stable across releases and platforms.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 sm{seed + 0x9E3779B97F4A7C15ull * (stream + 1)};
    sm.next();
    return sm.next();
}

// xoshiro256** 1.0 (Blackman & Vigna). All randomness in this project goes
// through this generator so that a seed reproduces bit-identically on any
// platform; <random> distributions are implementation-defined and avoided.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& word : state_) word = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Single uniform bit.
    bool flip() { return (next() & 1ull) != 0; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

/// Draws k ~ Poisson(mean). Knuth inversion below mean 30, Hoermann's PTRS
/// transformed rejection above. Both exact samplers; moments are covered by
/// tests against the distribution.
std::uint64_t sample_poisson(double mean, Xoshiro256ss& rng);

}  // namespace qct
