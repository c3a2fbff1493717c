#pragma once

#include <cstdint>
#include <vector>

#include "flatconv/grid_measure.hpp"
#include "flatconv/rng.hpp"

namespace flatconv {

/// One realized path of the pair-count martingale at a fixed residue.
/// increments[j-1] = Y_j, partial_sums[j] = W_j with W_0 = 0.  Once the
/// running multiplicity cap trips, every later increment is exactly 0.
struct MartingalePath {
    std::vector<Rational> increments;
    std::vector<Rational> partial_sums;
    bool cap_tripped = false;
    int trip_step = 0;  // first blocked step (1-based), 0 if never tripped
};

/// ℙ(sum of N independent Bernoulli(p) >= m) <= 2 (Np)^m / m!.
/// Requires 0 < Np < 1 and m >= 2, else OutOfHypothesis.
double binomial_tail_bound(std::int64_t N, double p, int m);

/// Hoeffding-Azuma tail: exp(-x^2 / (2A)); A <= 0 -> InvalidVariance.
double azuma_bound(double A, double x);

/// The variance proxy used with azuma_bound for the pair-count martingale:
/// A = 8 N^2 (M^2 + 1) / n.
double azuma_variance_proxy(std::int64_t n, std::int64_t N, std::int64_t M);

/// E[P(r)] / 4, where P(r) = #{ordered (i,j) and signs (s,t) with
/// s X_i + t X_j == r} for N draws uniform on {1..n-1}.  Closed form,
/// enumeration-checked in the tests.
Rational expected_quarter_pair_count(std::int64_t n, std::int64_t N, std::int64_t r);

/// Doob martingale of the quarter pair count at residue r: W_j is the
/// conditional expectation of P(r)/4 given the first j draws, centred at
/// W_0 = 0.  The increment at step j splits into the indicator mass the step
/// contributes (weights 1/4 on the self terms 2X_j, -2X_j and 1/2 on the
/// cross terms X_v +- X_j and reflections), minus its exact conditional
/// expectation given the history, plus the revision of the expected future
/// cross terms.  If the symmetrized multiplicity of the first j-1 draws has
/// reached M, the increment is 0 from that step on.
MartingalePath increment_sequence(std::int64_t n, const std::vector<std::int64_t>& samples,
                                  std::int64_t r, std::int64_t M);

/// For an untripped path, W_N telescopes to the centred quarter pair count:
/// W_N = P(r)/4 - E[P(r)]/4 exactly.  Returns the comparison; CapTripped if
/// the cap interfered.
bool telescoping_identity_check(std::int64_t n, const std::vector<std::int64_t>& samples,
                                std::int64_t r, std::int64_t M);

/// Empirical tail of max_r |P(r)/4 - E P(r)/4| against the Azuma curve.
struct TailExperiment {
    std::int64_t n = 0;
    std::int64_t N = 0;
    std::int64_t M = 0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    double azuma_A = 0.0;
    std::vector<double> x_grid;
    std::vector<double> empirical;
    std::vector<double> bounds;
    std::vector<double> stderrs;
};

/// Simulates `trials` full sampling rounds with sub-seeds derive_seed(seed, t)
/// and tabulates the empirical exceedance frequency over an x grid spanning
/// [0, A/(2(2M+3))] - the conservative bounded-increment regime.
TailExperiment deviation_tail_experiment(std::int64_t n, std::int64_t N, std::int64_t M,
                                         std::int64_t trials, std::uint64_t seed,
                                         int grid_points = 17);

/// Default multiplicity parameter for tail experiments when none is given:
/// choose_M at the effective exponent ln N / ln n with confidence 1/4.
std::int64_t default_tail_cap(std::int64_t n, std::int64_t N);

}  // namespace flatconv
