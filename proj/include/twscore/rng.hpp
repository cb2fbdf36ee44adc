#pragma once

#include <cstdint>

namespace twscore {

// SplitMix64 finalizer. Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Counter-based generator: SplitMix64 run in counter mode. Stateless per
// draw, so sequences are reproducible bit-for-bit from (seed, stream, i)
// on any platform and safe to index from concurrent tasks.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL))) {}

    std::uint64_t bits(std::uint64_t i) const {
        return mix64(key_ + (i + 1) * 0x9E3779B97F4A7C15ULL);
    }

    // Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform(std::uint64_t i) const {
        return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t key_;
};

// Deterministic sub-seed derivation, e.g. per grid cell or per station.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag));
}

} // namespace twscore
