#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "flatconv/density.hpp"
#include "flatconv/grid_measure.hpp"

namespace flatconv {

/// Finite closed subset of the circle, closed under x -> -x (mod 1).
/// Points are kept sorted and deduplicated in [0, 1).
class FiniteSymmetricSet {
  public:
    /// Validates symmetry; throws Error if some negation is missing.
    explicit FiniteSymmetricSet(std::vector<Rational> points);

    /// Convenience builder: normalizes, adds all negations, sorts, dedups.
    static FiniteSymmetricSet closure(std::vector<Rational> points);

    bool empty() const { return points_.empty(); }
    std::size_t size() const { return points_.size(); }
    const std::vector<Rational>& points() const { return points_; }

    bool operator==(const FiniteSymmetricSet&) const = default;

  private:
    FiniteSymmetricSet() = default;
    std::vector<Rational> points_;
};

/// Shortest arc distance on the circumference-1 circle, exact.
Rational circle_distance(const Rational& x, const Rational& y);

/// Sum-form Hausdorff distance
///   d_H(E, F) = sup_{e in E} d(e, F) + sup_{f in F} d(E, f),
/// the sum of the two directed sups (bi-Lipschitz equivalent to the usual
/// max form).  Either set empty -> EmptySet.
Rational hausdorff_distance(const FiniteSymmetricSet& E, const FiniteSymmetricSet& F);

/// The atom positions {k/n : c_k > 0} of a measure.
FiniteSymmetricSet support_set(const SymmetricCounts& m);

/// sup_{r in Z} |mu1_hat(r) - mu2_hat(r)|.  Grid coefficients are periodic
/// with period lcm(n1, n2), so one period of r realizes the full sup exactly.
double fourier_sup_difference(const SymmetricCounts& m1, const SymmetricCounts& m2);

/// d_H between supports plus the Fourier sup term.
double measure_distance(const SymmetricCounts& m1, const SymmetricCounts& m2);

/// measure_distance plus the sup-norm gap of the two autoconvolution
/// densities g*g.
double density_distance(const SymmetricCounts& m1, const SymmetricCounts& m2);

/// The three terms individually, plus their running sums.
struct MetricBreakdown {
    Rational hausdorff;
    double fourier_sup = 0.0;
    Rational density_sup;
    double measure_distance = 0.0;
    double density_distance = 0.0;
};
MetricBreakdown metric_breakdown(const SymmetricCounts& m1, const SymmetricCounts& m2);

/// Closed arc with rational center and width.
struct Arc {
    Rational center;
    Rational width;
    bool operator==(const Arc&) const = default;
};

/// Symmetric collection of closed arcs, disjoint after merging.
class IntervalCover {
  public:
    explicit IntervalCover(std::vector<Arc> arcs);

    const std::vector<Arc>& arcs() const { return arcs_; }
    bool covers(const Rational& x) const;
    Rational total_width() const;

  private:
    std::vector<Arc> arcs_;
};

/// Builds the symmetric cover with one closed arc of the given width per
/// point, merges overlaps, and evaluates the covering sum
///   sum |I|^(alpha + 1/m_index) < 1/m_index.
std::pair<IntervalCover, bool> covering_check(const FiniteSymmetricSet& E, double alpha,
                                              int m_index, const Rational& width);

/// Single-scale box-counting proxy: log(occupied cells at scale 1/n)/log(n),
/// with cells [k/n, (k+1)/n).  Meaningful only at the construction scale.
double box_dimension_estimate(const FiniteSymmetricSet& E, std::int64_t n);

}  // namespace flatconv
