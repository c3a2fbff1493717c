#pragma once

#include <vector>

#include "flatconv/grid_measure.hpp"
#include "flatconv/rng.hpp"

namespace flatconv::testing {

/// Random odd order in [lo, hi].
inline std::int64_t random_odd(Rng& rng, std::int64_t lo, std::int64_t hi) {
    const std::int64_t span = (hi - lo) / 2 + 1;
    return lo + 2 * static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(span)));
}

/// Random measure: n odd in [lo, hi], N in [1, max_pairs], uniform points.
inline SymmetricCounts random_measure(Rng& rng, std::int64_t lo, std::int64_t hi,
                                      std::int64_t max_pairs) {
    const std::int64_t n = random_odd(rng, lo, hi);
    const std::int64_t cap = std::min(max_pairs, n - 1);
    const std::int64_t N = 1 + static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(cap)));
    std::vector<std::int64_t> pts;
    for (std::int64_t i = 0; i < N; ++i) pts.push_back(rng.uniform_residue(n));
    return from_points(GridSpec(n), pts);
}

/// Independent oracle: the full O(n^2) double loop over every ordered index
/// pair, no support shortcuts.
inline std::vector<std::int64_t> dense_pair_counts(const SymmetricCounts& m) {
    const std::int64_t n = m.n();
    const auto& c = m.counts();
    std::vector<std::int64_t> out(static_cast<std::size_t>(n), 0);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j) out[(i + j) % n] += c[i] * c[j];
    return out;
}

}  // namespace flatconv::testing
