#include "flatconv/density.hpp"

#include <numeric>

namespace flatconv {

StepDensity::StepDensity(GridSpec grid, std::vector<Rational> cell_values)
    : grid_(grid), values_(std::move(cell_values)) {
    const std::int64_t n = grid_.n;
    if (static_cast<std::int64_t>(values_.size()) != n)
        throw Error("cell value vector length must equal the grid order");
    Rational total = 0;
    for (std::int64_t k = 0; k < n; ++k) {
        if (values_[k] < 0) throw Error("cell values must be non-negative");
        if (values_[k] != values_[(n - k) % n])
            throw Error("cell values must be symmetric under negation");
        total += values_[k];
    }
    if (total != Rational(n)) throw Error("density must have unit mass");
}

Rational StepDensity::max_value() const {
    Rational best = 0;
    for (const auto& v : values_) best = std::max(best, v);
    return best;
}

Rational StepDensity::integral() const {
    Rational total = 0;
    for (const auto& v : values_) total += v;
    return total / grid_.n;
}

PiecewiseLinearPeriodic::PiecewiseLinearPeriodic(GridSpec grid, std::vector<Rational> node_values)
    : grid_(grid), values_(std::move(node_values)) {
    if (static_cast<std::int64_t>(values_.size()) != grid_.n)
        throw Error("node value vector length must equal the grid order");
}

Rational PiecewiseLinearPeriodic::value_at(const Rational& x) const {
    const std::int64_t n = grid_.n;
    Rational t = x * n;
    // reduce t into [0, n)
    BigInt k = floor_div(numerator(t), denominator(t));
    Rational frac = t - Rational(k);
    std::int64_t cell = static_cast<std::int64_t>(((k % n) + n) % n);
    const Rational& a = values_[cell];
    const Rational& b = values_[(cell + 1) % n];
    return a + (b - a) * frac;
}

Rational PiecewiseLinearPeriodic::integral() const {
    Rational total = 0;
    for (const auto& v : values_) total += v;
    return total / grid_.n;
}

StepDensity build_step_density(const SymmetricCounts& m) {
    const std::int64_t n = m.n();
    std::vector<Rational> v;
    v.reserve(static_cast<std::size_t>(n));
    for (const std::int64_t c : m.counts()) v.emplace_back(n * c, 2 * m.pair_count());
    return StepDensity(m.grid(), std::move(v));
}

PiecewiseLinearPeriodic autoconvolve_density(const StepDensity& g) {
    // u_k = (1/n) sum_{i+j == k mod n} v_i v_j  (exact rational cyclic
    // convolution over the support).
    const std::int64_t n = g.n();
    const auto& v = g.cell_values();
    std::vector<std::int64_t> support;
    for (std::int64_t k = 0; k < n; ++k)
        if (v[k] != 0) support.push_back(k);
    std::vector<Rational> u(static_cast<std::size_t>(n), Rational(0));
    for (const std::int64_t i : support)
        for (const std::int64_t j : support) u[(i + j) % n] += v[i] * v[j];
    for (auto& x : u) x /= n;
    return PiecewiseLinearPeriodic(g.grid(), std::move(u));
}

Rational sup_deviation_from_one(const PiecewiseLinearPeriodic& f) {
    Rational best = 0;
    for (const auto& u : f.node_values()) {
        Rational d = u - 1;
        if (d < 0) d = -d;
        if (d > best) best = d;
    }
    return best;
}

Rational sup_norm_difference(const PiecewiseLinearPeriodic& f1,
                             const PiecewiseLinearPeriodic& f2) {
    if (f1.grid() == f2.grid()) {
        Rational best = 0;
        for (std::int64_t k = 0; k < f1.n(); ++k) {
            Rational d = f1.node_values()[k] - f2.node_values()[k];
            if (d < 0) d = -d;
            if (d > best) best = d;
        }
        return best;
    }
    const std::int64_t refined = std::lcm(f1.n(), f2.n());
    Rational best = 0;
    for (std::int64_t j = 0; j < refined; ++j) {
        const Rational x(j, refined);
        Rational d = f1.value_at(x) - f2.value_at(x);
        if (d < 0) d = -d;
        if (d > best) best = d;
    }
    return best;
}

}  // namespace flatconv
