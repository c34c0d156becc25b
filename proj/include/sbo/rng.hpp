#pragma once

#include <cmath>
#include <cstdint>

// Deterministic random number generation.  The engine is xoshiro256**
// (Blackman/Vigna), seeded through SplitMix64.  All floating-point draws go
// through next_open01(), which maps 53 high bits to the open interval (0,1),
// so the same seed reproduces the same stream bit-for-bit on any platform
// with IEEE doubles.

namespace sbo {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Per-replicate seed: base seed XOR a hash of the replicate index.  Replicates
// can run in any order (or in parallel) and still reproduce the same streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t replicate) {
    return base ^ mix64(replicate);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        // SplitMix64 expansion of the seed into the 256-bit state.
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = s;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
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

    // Uniform on the open interval (0,1): never returns 0 or 1, so logs and
    // inverse transforms are always finite.
    double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_uniform(double a, double b) { return a + (b - a) * next_open01(); }

    // Inverse-transform exponential with the given rate.
    double next_exponential(double rate) { return -std::log(next_open01()) / rate; }

    // log of a standard exponential variate; subtracting log-rates gives the
    // log of a rate-w exponential without ever forming w itself.
    double next_log_std_exponential() { return std::log(-std::log(next_open01())); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

}  // namespace sbo
