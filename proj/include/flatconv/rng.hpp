#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace flatconv {

/// SplitMix64 finalizer: the fixed 64-bit mixing permutation used to derive
/// per-trial sub-seeds.  Documented so that independent implementations can
/// reproduce every run byte for byte.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

/// Sub-seed for trial/attempt `index` (1-based) of a run seeded with `seed`:
/// derive_seed(seed, i) = mix64(seed XOR mix64(i)).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index));
}

/// Deterministic pseudo-random stream.  The core generator is std::mt19937_64,
/// whose output sequence is fixed by the C++ standard, so identical seeds give
/// identical draws on every platform.  Bounded draws use masked rejection,
/// which is unbiased and avoids the implementation-defined behaviour of
/// std::uniform_int_distribution.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on {0, ..., bound-1}; bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
        std::uint64_t mask = bound - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            const std::uint64_t v = eng_() & mask;
            if (v < bound) return v;
        }
    }

    /// Uniform on the nonzero residues {1, ..., n-1}.
    std::int64_t uniform_residue(std::int64_t n) {
        if (n < 2) throw std::invalid_argument("uniform_residue: n must be >= 2");
        return static_cast<std::int64_t>(uniform_below(static_cast<std::uint64_t>(n - 1))) + 1;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace flatconv
