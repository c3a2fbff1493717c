#pragma once

#include <cstdint>
#include <vector>

#include "flatconv/errors.hpp"
#include "flatconv/rational.hpp"

namespace flatconv {

/// The order-n cyclic grid {k/n : k = 0..n-1} on a circle of circumference 1.
/// n must be odd and >= 3; oddness makes 2 invertible mod n and keeps every
/// nonzero residue distinct from its negation.
struct GridSpec {
    std::int64_t n;

    explicit GridSpec(std::int64_t order) : n(order) {
        if (n < 3) throw InvalidGrid("grid order must be >= 3");
        if (n % 2 == 0) throw InvalidGrid("grid order must be odd");
    }

    bool operator==(const GridSpec&) const = default;
};

/// Atom counts of a symmetric atomic probability measure on the grid:
/// the measure puts mass c_k/(2N) at k/n.  Invariants: c_0 = 0 (the origin
/// carries no atom), c_k = c_{n-k} (symmetry under negation), sum c_k = 2N.
class SymmetricCounts {
  public:
    SymmetricCounts(GridSpec grid, std::vector<std::int64_t> counts, std::int64_t pair_count);

    const GridSpec& grid() const { return grid_; }
    std::int64_t n() const { return grid_.n; }
    const std::vector<std::int64_t>& counts() const { return counts_; }
    std::int64_t pair_count() const { return pair_count_; }

    /// Measure of the single grid point k/n, i.e. c_k/(2N).
    Rational mass_at(std::int64_t k) const;

    /// Residues with c_k > 0, ascending.
    std::vector<std::int64_t> support() const;

    bool operator==(const SymmetricCounts&) const = default;

  private:
    GridSpec grid_;
    std::vector<std::int64_t> counts_;
    std::int64_t pair_count_;
};

/// Exact nonnegative rational weights on the grid summing to 1.
class AtomVector {
  public:
    AtomVector(GridSpec grid, std::vector<Rational> weights);

    const GridSpec& grid() const { return grid_; }
    std::int64_t n() const { return grid_.n; }
    const std::vector<Rational>& weights() const { return weights_; }

    bool operator==(const AtomVector&) const = default;

  private:
    GridSpec grid_;
    std::vector<Rational> weights_;
};

/// Tallies each residue together with its negation n-k; N = points.size().
/// Residue 0 (or anything outside 1..n-1) -> InvalidAtom; empty -> EmptyMeasure.
SymmetricCounts from_points(GridSpec grid, const std::vector<std::int64_t>& points);

/// Integer pair counts of the cyclic self-convolution:
/// P_k = sum_{i+j == k mod n} c_i c_j.  sum_k P_k = (2N)^2.
std::vector<std::int64_t> pair_counts(const SymmetricCounts& m);

/// sigma * sigma on the grid: weight_k = P_k / (4 N^2), exact.
AtomVector autoconvolve(const SymmetricCounts& m);

/// Transform-based pair counts, re-normalized to exact rationals by rounding
/// each value to the nearest integer.  RoundingUnsafe if any pre-rounding
/// value sits farther than 0.01 from an integer.
AtomVector autoconvolve_fast(const SymmetricCounts& m);

/// sigma_hat(r) = (1/2N) sum_k c_k cos(2 pi k r / n).  Exactly real by
/// symmetry, n-periodic and even in r; the trig argument is reduced so that
/// equal-in-exact-arithmetic inputs give bitwise equal results.
double fourier_coefficient(const SymmetricCounts& m, std::int64_t r);

/// max_k |w_k - 1/n| over every residue, exact.
Rational max_flatness_deviation(const AtomVector& v);

/// Same, but over the nonzero residues k = 1..n-1 only.  For a symmetrized
/// atomic measure the origin always carries (sigma*sigma)({0}) >= 1/(2N), so
/// uniformity is assessed away from it.
Rational max_flatness_deviation_nonzero(const AtomVector& v);

namespace detail {
/// Shared rounding guard for the transform path (unit-tested directly).
std::vector<std::int64_t> round_checked(const std::vector<double>& values, double tolerance);
}  // namespace detail

}  // namespace flatconv
