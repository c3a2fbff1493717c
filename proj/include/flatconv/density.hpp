#pragma once

#include <cstdint>
#include <vector>

#include "flatconv/grid_measure.hpp"

namespace flatconv {

/// Piecewise-constant periodic density: value v_k on the width-1/n cell
/// centred at k/n.  Invariants: v_k >= 0, v_k = v_{n-k}, (1/n) sum v_k = 1.
class StepDensity {
  public:
    StepDensity(GridSpec grid, std::vector<Rational> cell_values);

    const GridSpec& grid() const { return grid_; }
    std::int64_t n() const { return grid_.n; }
    const std::vector<Rational>& cell_values() const { return values_; }

    Rational max_value() const;
    Rational integral() const;  // exactly 1 by the invariant

  private:
    GridSpec grid_;
    std::vector<Rational> values_;
};

/// Continuous periodic function, linear between the nodes k/n with value u_k
/// at k/n.  Continuity is structural: adjacent pieces share their node value.
class PiecewiseLinearPeriodic {
  public:
    PiecewiseLinearPeriodic(GridSpec grid, std::vector<Rational> node_values);

    const GridSpec& grid() const { return grid_; }
    std::int64_t n() const { return grid_.n; }
    const std::vector<Rational>& node_values() const { return values_; }

    /// Exact value at any circle position (taken mod 1).
    Rational value_at(const Rational& x) const;

    /// (1/n) sum over trapezoids = (1/n) sum u_k.
    Rational integral() const;

  private:
    GridSpec grid_;
    std::vector<Rational> values_;
};

/// g = sigma * K with the unit-mass cell kernel K = n * 1_[-1/(2n), 1/(2n)]:
/// v_k = n c_k / (2N).  Mass is exactly 1.
StepDensity build_step_density(const SymmetricCounts& m);

/// g*g evaluated exactly.  K*K is the unit hat of half-width 1/n, and the
/// translated hats form a partition of unity, so g*g is the linear
/// interpolation of its node values u_k = n * (sigma*sigma)_k.
PiecewiseLinearPeriodic autoconvolve_density(const StepDensity& g);

/// max_k |u_k - 1|; against a constant the sup is attained at a node.
Rational sup_deviation_from_one(const PiecewiseLinearPeriodic& f);

/// Sup-norm of f1 - f2.  Different grid orders are compared on the common
/// refinement of order lcm(n1, n2); the difference is piecewise linear with
/// breakpoints among the refined nodes, so the sup is a node scan.
Rational sup_norm_difference(const PiecewiseLinearPeriodic& f1, const PiecewiseLinearPeriodic& f2);

}  // namespace flatconv
