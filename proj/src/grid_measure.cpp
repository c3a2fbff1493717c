#include "flatconv/grid_measure.hpp"

#include <cmath>

#include "flatconv/fft.hpp"

namespace flatconv {

SymmetricCounts::SymmetricCounts(GridSpec grid, std::vector<std::int64_t> counts,
                                 std::int64_t pair_count)
    : grid_(grid), counts_(std::move(counts)), pair_count_(pair_count) {
    const std::int64_t n = grid_.n;
    if (static_cast<std::int64_t>(counts_.size()) != n)
        throw InvalidAtom("counts length must equal the grid order");
    if (pair_count_ <= 0) throw EmptyMeasure("pair count N must be positive");
    if (pair_count_ > (std::int64_t{1} << 30))
        throw InvalidAtom("pair count too large for exact integer pair counting");
    if (counts_[0] != 0) throw InvalidAtom("the origin must carry no atom");
    std::int64_t total = 0;
    for (std::int64_t k = 0; k < n; ++k) {
        if (counts_[k] < 0) throw InvalidAtom("counts must be non-negative");
        if (counts_[k] != counts_[(n - k) % n])
            throw InvalidAtom("counts must be symmetric under negation");
        total += counts_[k];
    }
    if (total != 2 * pair_count_)
        throw InvalidAtom("counts must sum to 2N");
}

Rational SymmetricCounts::mass_at(std::int64_t k) const {
    const std::int64_t n = grid_.n;
    const std::int64_t kk = ((k % n) + n) % n;
    return Rational(counts_[kk], 2 * pair_count_);
}

std::vector<std::int64_t> SymmetricCounts::support() const {
    std::vector<std::int64_t> s;
    for (std::int64_t k = 0; k < grid_.n; ++k)
        if (counts_[k] > 0) s.push_back(k);
    return s;
}

AtomVector::AtomVector(GridSpec grid, std::vector<Rational> weights)
    : grid_(grid), weights_(std::move(weights)) {
    if (static_cast<std::int64_t>(weights_.size()) != grid_.n)
        throw InvalidAtom("weight vector length must equal the grid order");
    Rational total = 0;
    for (const auto& w : weights_) {
        if (w < 0) throw InvalidAtom("weights must be non-negative");
        total += w;
    }
    if (total != 1) throw InvalidAtom("weights must sum to 1");
}

SymmetricCounts from_points(GridSpec grid, const std::vector<std::int64_t>& points) {
    if (points.empty()) throw EmptyMeasure("at least one point is required");
    const std::int64_t n = grid.n;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
    for (const std::int64_t p : points) {
        if (p < 1 || p >= n) throw InvalidAtom("point residues must lie in 1..n-1");
        ++counts[p];
        ++counts[n - p];
    }
    return SymmetricCounts(grid, std::move(counts),
                           static_cast<std::int64_t>(points.size()));
}

std::vector<std::int64_t> pair_counts(const SymmetricCounts& m) {
    const std::int64_t n = m.n();
    const auto& c = m.counts();
    std::vector<std::int64_t> out(static_cast<std::size_t>(n), 0);
    const auto support = m.support();
    for (const std::int64_t i : support)
        for (const std::int64_t j : support)
            out[(i + j) % n] += c[i] * c[j];
    return out;
}

namespace {

AtomVector weights_from_pair_counts(const GridSpec& grid, const std::vector<std::int64_t>& p,
                                    std::int64_t pair_count) {
    const std::int64_t denom = 4 * pair_count * pair_count;
    std::vector<Rational> w;
    w.reserve(p.size());
    for (const std::int64_t v : p) w.emplace_back(v, denom);
    return AtomVector(grid, std::move(w));
}

}  // namespace

AtomVector autoconvolve(const SymmetricCounts& m) {
    return weights_from_pair_counts(m.grid(), pair_counts(m), m.pair_count());
}

namespace detail {

std::vector<std::int64_t> round_checked(const std::vector<double>& values, double tolerance) {
    std::vector<std::int64_t> out;
    out.reserve(values.size());
    for (const double v : values) {
        const double r = std::nearbyint(v);
        if (std::abs(v - r) > tolerance)
            throw RoundingUnsafe("transform output too far from an integer");
        out.push_back(static_cast<std::int64_t>(r));
    }
    return out;
}

}  // namespace detail

AtomVector autoconvolve_fast(const SymmetricCounts& m) {
    const auto raw = fft::cyclic_self_convolution(m.counts());
    const auto p = detail::round_checked(raw, 0.01);
    return weights_from_pair_counts(m.grid(), p, m.pair_count());
}

double fourier_coefficient(const SymmetricCounts& m, std::int64_t r) {
    const std::int64_t n = m.n();
    const std::int64_t rr = ((r % n) + n) % n;
    const auto& c = m.counts();
    double acc = 0.0;
    for (std::int64_t k = 0; k < n; ++k) {
        if (c[k] == 0) continue;
        std::int64_t a = (k * rr) % n;
        // cos(2 pi a/n) = cos(2 pi (n-a)/n): fold so that r and -r (and any
        // representative of the same residue) produce bitwise equal sums.
        if (a > n - a) a = n - a;
        acc += static_cast<double>(c[k]) *
               std::cos(2.0 * M_PI * static_cast<double>(a) / static_cast<double>(n));
    }
    return acc / static_cast<double>(2 * m.pair_count());
}

namespace {

Rational deviation_scan(const AtomVector& v, std::int64_t first) {
    const std::int64_t n = v.n();
    const Rational target(1, n);
    Rational best = 0;
    for (std::int64_t k = first; k < n; ++k) {
        Rational d = v.weights()[k] - target;
        if (d < 0) d = -d;
        if (d > best) best = d;
    }
    return best;
}

}  // namespace

Rational max_flatness_deviation(const AtomVector& v) { return deviation_scan(v, 0); }

Rational max_flatness_deviation_nonzero(const AtomVector& v) { return deviation_scan(v, 1); }

}  // namespace flatconv
