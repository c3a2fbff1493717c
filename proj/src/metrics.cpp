#include "flatconv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace flatconv {

namespace {

/// Reduce into [0, 1).
Rational mod_one(const Rational& x) {
    const BigInt k = floor_div(numerator(x), denominator(x));
    return x - Rational(k);
}

Rational negate_mod_one(const Rational& x) { return mod_one(-x); }

}  // namespace

FiniteSymmetricSet::FiniteSymmetricSet(std::vector<Rational> points) {
    for (auto& p : points) p = mod_one(p);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (const auto& p : points) {
        const Rational neg = negate_mod_one(p);
        if (!std::binary_search(points.begin(), points.end(), neg))
            throw Error("set is not closed under negation");
    }
    points_ = std::move(points);
}

FiniteSymmetricSet FiniteSymmetricSet::closure(std::vector<Rational> points) {
    std::vector<Rational> all;
    all.reserve(points.size() * 2);
    for (const auto& p : points) {
        all.push_back(mod_one(p));
        all.push_back(negate_mod_one(p));
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    FiniteSymmetricSet s;
    s.points_ = std::move(all);
    return s;
}

Rational circle_distance(const Rational& x, const Rational& y) {
    Rational d = mod_one(x - y);
    if (d > Rational(1, 2)) d = 1 - d;
    return d;
}

namespace {

Rational directed_sup(const FiniteSymmetricSet& from, const FiniteSymmetricSet& to) {
    Rational sup = 0;
    for (const auto& e : from.points()) {
        Rational nearest(1);
        for (const auto& f : to.points()) nearest = std::min(nearest, circle_distance(e, f));
        sup = std::max(sup, nearest);
    }
    return sup;
}

}  // namespace

Rational hausdorff_distance(const FiniteSymmetricSet& E, const FiniteSymmetricSet& F) {
    if (E.empty() || F.empty()) throw EmptySet("Hausdorff distance needs non-empty sets");
    return directed_sup(E, F) + directed_sup(F, E);
}

FiniteSymmetricSet support_set(const SymmetricCounts& m) {
    std::vector<Rational> pts;
    for (const std::int64_t k : m.support()) pts.emplace_back(k, m.n());
    return FiniteSymmetricSet(std::move(pts));
}

double fourier_sup_difference(const SymmetricCounts& m1, const SymmetricCounts& m2) {
    const std::int64_t period = std::lcm(m1.n(), m2.n());
    double sup = 0.0;
    for (std::int64_t r = 0; r < period; ++r)
        sup = std::max(sup, std::abs(fourier_coefficient(m1, r) - fourier_coefficient(m2, r)));
    return sup;
}

double measure_distance(const SymmetricCounts& m1, const SymmetricCounts& m2) {
    return to_double(hausdorff_distance(support_set(m1), support_set(m2))) +
           fourier_sup_difference(m1, m2);
}

double density_distance(const SymmetricCounts& m1, const SymmetricCounts& m2) {
    return metric_breakdown(m1, m2).density_distance;
}

MetricBreakdown metric_breakdown(const SymmetricCounts& m1, const SymmetricCounts& m2) {
    MetricBreakdown b;
    b.hausdorff = hausdorff_distance(support_set(m1), support_set(m2));
    b.fourier_sup = fourier_sup_difference(m1, m2);
    b.density_sup = sup_norm_difference(autoconvolve_density(build_step_density(m1)),
                                        autoconvolve_density(build_step_density(m2)));
    b.measure_distance = to_double(b.hausdorff) + b.fourier_sup;
    b.density_distance = b.measure_distance + to_double(b.density_sup);
    return b;
}

IntervalCover::IntervalCover(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
    for (const auto& a : arcs_) {
        if (a.width <= 0) throw Error("arc widths must be positive");
        const Arc neg{negate_mod_one(a.center), a.width};
        if (std::find(arcs_.begin(), arcs_.end(), neg) == arcs_.end())
            throw Error("cover is not symmetric under negation");
    }
}

bool IntervalCover::covers(const Rational& x) const {
    for (const auto& a : arcs_) {
        if (a.width >= 1) return true;
        if (circle_distance(x, a.center) <= a.width / 2) return true;
    }
    return false;
}

Rational IntervalCover::total_width() const {
    Rational t = 0;
    for (const auto& a : arcs_) t += a.width;
    return t;
}

namespace {

/// Union of closed arcs given as (start, start+width) with start in [0, 1);
/// returns the maximal disjoint closed arcs of the union.
std::vector<Arc> merge_closed_arcs(std::vector<std::pair<Rational, Rational>> spans) {
    std::sort(spans.begin(), spans.end());
    std::vector<std::pair<Rational, Rational>> merged;
    for (const auto& s : spans) {
        if (!merged.empty() && s.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, s.second);
        else
            merged.push_back(s);
    }
    // wrap: the last span may spill past 1 and swallow spans at the front
    if (!merged.empty() && merged.back().second >= 1) {
        while (merged.size() > 1 && merged.front().first <= merged.back().second - 1) {
            merged.back().second =
                std::max(merged.back().second, Rational(merged.front().second + 1));
            merged.erase(merged.begin());
        }
        if (merged.back().second - merged.back().first >= 1)
            return {Arc{Rational(0), Rational(1)}};  // full circle
    }
    std::vector<Arc> arcs;
    arcs.reserve(merged.size());
    for (const auto& s : merged) {
        const Rational width = s.second - s.first;
        arcs.push_back(Arc{mod_one((s.first + s.second) / 2), width});
    }
    return arcs;
}

}  // namespace

std::pair<IntervalCover, bool> covering_check(const FiniteSymmetricSet& E, double alpha,
                                              int m_index, const Rational& width) {
    if (m_index < 1) throw Error("covering index must be >= 1");
    if (width <= 0) throw Error("arc width must be positive");

    std::vector<Arc> arcs;
    if (width >= 1) {
        arcs.push_back(Arc{Rational(0), Rational(1)});
    } else {
        std::vector<std::pair<Rational, Rational>> spans;
        spans.reserve(E.size());
        for (const auto& x : E.points()) {
            const Rational start = mod_one(x - width / 2);
            spans.emplace_back(start, start + width);
        }
        arcs = merge_closed_arcs(std::move(spans));
    }

    const double exponent = alpha + 1.0 / static_cast<double>(m_index);
    double sum = 0.0;
    for (const auto& a : arcs) sum += std::pow(to_double(a.width), exponent);
    const bool within = sum < 1.0 / static_cast<double>(m_index);
    return {IntervalCover(std::move(arcs)), within};
}

double box_dimension_estimate(const FiniteSymmetricSet& E, std::int64_t n) {
    if (E.empty()) throw EmptySet("box dimension needs a non-empty set");
    if (n < 2) throw Error("box scale must be >= 2");
    std::set<std::int64_t> cells;
    for (const auto& x : E.points()) {
        const BigInt cell = floor_div(numerator(x) * n, denominator(x));
        cells.insert(cell.convert_to<std::int64_t>());
    }
    return std::log(static_cast<double>(cells.size())) / std::log(static_cast<double>(n));
}

}  // namespace flatconv
