#pragma once

#include <cstdint>

namespace dotprod::detail {

/// SplitMix64: the 64-bit state walks a Weyl sequence and each output is a
/// finalizer of the state. Chosen because the whole generator is a dozen
/// lines that any implementation can reproduce bit-for-bit from this file.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform draw from [1, 2^32] (never zero).
    std::uint64_t next_coordinate_numerator() { return (next() >> 32) + 1; }

    /// Uniform-enough draw from [0, bound]; modulo bias is acceptable here,
    /// determinism is what matters.
    std::uint64_t next_below(std::uint64_t bound) { return bound == 0 ? 0 : next() % (bound + 1); }

private:
    std::uint64_t state_;
};

/// Deterministic per-instance sub-seed so one experiment seed fans out to
/// independent streams (one per n, say) without correlation.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ull * (salt + 1)));
    return mix.next();
}

}  // namespace dotprod::detail
