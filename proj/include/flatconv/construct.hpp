#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "flatconv/grid_measure.hpp"
#include "flatconv/rng.hpp"

namespace flatconv {

/// Divergent scale sequences selectable for the flatness bound.
enum class Phi { Log, LogLog, SqrtLog };

double phi_value(Phi phi, std::int64_t n);
Phi phi_from_name(const std::string& name);
std::string phi_name(Phi phi);

struct ConstructionParams {
    double gamma = 0.6;     // N = floor(n^gamma)
    double epsilon = 1.0;   // flatness slack
    Phi phi = Phi::Log;
    std::uint64_t seed = 0;
    int max_attempts = 1;

    void validate() const;
};

/// Outcome of one sampled measure checked against the two acceptance rules.
struct TrialReport {
    std::int64_t n = 0;
    std::int64_t N = 0;
    std::int64_t M = 0;
    Rational max_deviation;       // over nonzero residues
    double flatness_bound = 0.0;  // 2 eps phi(n) sqrt(ln n) / (N sqrt n)
    std::int64_t multiplicity_max = 0;
    bool flat_ok = false;
    bool mult_ok = false;
    int attempts_used = 1;
    std::uint64_t seed = 0;
};

/// Thrown when every attempt of construct() failed; carries the attempt with
/// the smallest deviation (earliest on ties).
struct ExhaustedAttempts final : Error {
    explicit ExhaustedAttempts(TrialReport report)
        : Error("construction exhausted its attempt budget"), best(std::move(report)) {}
    TrialReport best;
};

/// floor(n^gamma) with a 1e-9 guard against libm rounding at exact powers.
std::int64_t pair_count_for(double gamma, std::int64_t n);

/// N independent draws uniform on {1,...,n-1}, symmetrized through
/// from_points.  N >= n -> TooManyPoints.
SymmetricCounts sample_points(GridSpec grid, std::int64_t N, Rng& stream);

/// Smallest m >= 2 such that for every n >= 3
///     n * 2 (2 n^{gamma-1} * n/(n-1))^m / m!  <=  epsilon / n.
/// The left side, times n, decreases in n once (gamma-1)m + 2 <= 0, so it
/// suffices to test the exponent sign and the value at n = 3.
int choose_M(double gamma, double epsilon);

/// Largest atom count, reflections included.
std::int64_t multiplicity_max(const SymmetricCounts& m);

/// 2 * epsilon * phi(n) * sqrt(ln n) / (N sqrt n).  The factor 2 carries the
/// uniform target 1/n of the mod-n convention (see README, Conventions).
double flatness_bound(const ConstructionParams& p, std::int64_t n, std::int64_t N);

/// Evaluates both acceptance rules for a sampled measure.  The deviation is
/// taken over nonzero residues; the multiplicity target is
/// choose_M(gamma, 1/4).
TrialReport check_trial(const SymmetricCounts& m, const ConstructionParams& p);

/// Rejection loop: attempt i uses the sub-seed derive_seed(seed, i); returns
/// the first attempt passing both checks.  Deterministic given (params, n).
std::pair<SymmetricCounts, TrialReport> construct(const ConstructionParams& p, std::int64_t n);

}  // namespace flatconv
