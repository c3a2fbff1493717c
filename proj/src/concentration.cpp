#include "flatconv/concentration.hpp"

#include <algorithm>
#include <cmath>

#include "flatconv/construct.hpp"
#include "flatconv/parallel.hpp"

namespace flatconv {

double binomial_tail_bound(std::int64_t N, double p, int m) {
    const double np = static_cast<double>(N) * p;
    if (!(np > 0.0 && np < 1.0)) throw OutOfHypothesis("requires 0 < Np < 1");
    if (m < 2) throw OutOfHypothesis("requires m >= 2");
    double value = 2.0;
    for (int i = 1; i <= m; ++i) value *= np / static_cast<double>(i);
    return value;
}

double azuma_bound(double A, double x) {
    if (!(A > 0.0)) throw InvalidVariance("A must be positive");
    return std::exp(-(x * x) / (2.0 * A));
}

double azuma_variance_proxy(std::int64_t n, std::int64_t N, std::int64_t M) {
    return 8.0 * static_cast<double>(N) * static_cast<double>(N) *
           (static_cast<double>(M) * static_cast<double>(M) + 1.0) / static_cast<double>(n);
}

Rational expected_quarter_pair_count(std::int64_t n, std::int64_t N, std::int64_t r) {
    if (n < 3 || n % 2 == 0) throw InvalidGrid("n must be odd and >= 3");
    const std::int64_t rr = ((r % n) + n) % n;
    if (rr == 0) {
        // diagonal mixed-sign terms always hit 0; collisions X_i == +-X_j add 4 each
        return Rational(N, 2) + Rational(BigInt(N) * (N - 1), BigInt(n - 1));
    }
    // self terms 2X, -2X hit r with probability 1/(n-1) each; each ordered
    // cross pair contributes 4 sign terms of probability (n-2)/(n-1)^2
    return Rational(N, 2 * (n - 1)) +
           Rational(BigInt(N) * (N - 1) * (n - 2), BigInt(n - 1) * (n - 1));
}

MartingalePath increment_sequence(std::int64_t n, const std::vector<std::int64_t>& samples,
                                  std::int64_t r, std::int64_t M) {
    if (n < 3 || n % 2 == 0) throw InvalidGrid("n must be odd and >= 3");
    if (M < 1) throw Error("cap M must be >= 1");
    const std::int64_t rr = ((r % n) + n) % n;
    const std::int64_t N = static_cast<std::int64_t>(samples.size());
    const Rational q(1, n - 1);
    const bool origin = (rr == 0);

    MartingalePath path;
    path.partial_sums.reserve(static_cast<std::size_t>(N) + 1);
    path.partial_sums.emplace_back(0);

    std::vector<std::int64_t> occ(static_cast<std::size_t>(n), 0);   // raw draws
    std::vector<std::int64_t> mult(static_cast<std::size_t>(n), 0);  // symmetrized
    std::int64_t mult_max = 0;

    for (std::int64_t j = 1; j <= N; ++j) {
        const std::int64_t x = samples[static_cast<std::size_t>(j - 1)];
        if (x < 1 || x >= n) throw InvalidAtom("samples must lie in 1..n-1");

        Rational y(0);
        if (!path.cap_tripped && mult_max >= M) {
            path.cap_tripped = true;
            path.trip_step = static_cast<int>(j);
        }
        if (!path.cap_tripped) {
            // indicator mass contributed by step j
            Rational t(0);
            const std::int64_t twox = (2 * x) % n;
            if (twox == rr) t += Rational(1, 4);
            if ((n - twox) % n == rr) t += Rational(1, 4);
            const std::int64_t a = ((rr - x) % n + n) % n;   // X_v + x == r
            const std::int64_t b = ((-rr - x) % n + n) % n;  // -(X_v + x) == r
            const std::int64_t c = (x + rr) % n;             // X_v - x == r
            const std::int64_t d = ((x - rr) % n + n) % n;   // x - X_v == r
            t += Rational(occ[a] + occ[b] + occ[c] + occ[d], 2);

            // conditional expectation of that mass given the history
            const std::int64_t hits_prev =
                origin ? 0 : occ[rr] + occ[n - rr];
            Rational center = q * (2 * (j - 1) - hits_prev);
            if (!origin) center += q / 2;

            // revision of the expected future cross terms against draw j
            const std::int64_t hits_j =
                origin ? 0 : ((x == rr) ? 1 : 0) + ((x == n - rr) ? 1 : 0);
            Rational expected_hits = origin ? Rational(0) : 2 * q;
            const Rational forward = Rational(N - j) * q * (expected_hits - hits_j);

            y = t - center + forward;
        }
        path.increments.push_back(y);
        path.partial_sums.push_back(path.partial_sums.back() + y);

        ++occ[x];
        ++mult[x];
        ++mult[n - x];
        mult_max = std::max({mult_max, mult[x], mult[n - x]});
    }
    return path;
}

bool telescoping_identity_check(std::int64_t n, const std::vector<std::int64_t>& samples,
                                std::int64_t r, std::int64_t M) {
    const MartingalePath path = increment_sequence(n, samples, r, M);
    if (path.cap_tripped) throw CapTripped("identity asserted only on untripped paths");
    const std::int64_t rr = ((r % n) + n) % n;
    const auto counts = pair_counts(from_points(GridSpec(n), samples));
    const std::int64_t N = static_cast<std::int64_t>(samples.size());
    // The deterministic mixed-sign diagonal mass at the origin cancels
    // between the count and its expectation.
    const Rational centred =
        Rational(counts[rr], 4) - expected_quarter_pair_count(n, N, rr);
    return path.partial_sums.back() == centred;
}

TailExperiment deviation_tail_experiment(std::int64_t n, std::int64_t N, std::int64_t M,
                                         std::int64_t trials, std::uint64_t seed,
                                         int grid_points) {
    if (n < 3 || n % 2 == 0) throw InvalidGrid("n must be odd and >= 3");
    if (N < 1 || N >= n) throw TooManyPoints("need 1 <= N < n");
    if (trials < 1) throw Error("trials must be >= 1");
    if (grid_points < 2) throw Error("need at least two grid points");

    TailExperiment ex;
    ex.n = n;
    ex.N = N;
    ex.M = M;
    ex.trials = trials;
    ex.seed = seed;
    ex.azuma_A = azuma_variance_proxy(n, N, M);

    // Keep x inside the regime where the bounded-increment assumption is
    // honest: |Y_j| <= 2M + 3 under the cap, so stop at A / (2 (2M + 3)).
    const double max_step = 2.0 * static_cast<double>(M) + 3.0;
    const double x_max = ex.azuma_A / (2.0 * max_step);
    for (int i = 0; i < grid_points; ++i)
        ex.x_grid.push_back(x_max * static_cast<double>(i) /
                            static_cast<double>(grid_points - 1));

    const double e0 = to_double(expected_quarter_pair_count(n, N, 0));
    const double e1 = to_double(expected_quarter_pair_count(n, N, 1));

    std::vector<double> stats(static_cast<std::size_t>(trials));
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
        Rng stream(derive_seed(seed, static_cast<std::uint64_t>(t) + 1));
        std::vector<std::int64_t> draws;
        draws.reserve(static_cast<std::size_t>(N));
        for (std::int64_t i = 0; i < N; ++i) draws.push_back(stream.uniform_residue(n));
        const auto counts = pair_counts(from_points(GridSpec(n), draws));
        double worst = 0.0;
        for (std::int64_t rr = 0; rr < n; ++rr) {
            const double centred =
                0.25 * static_cast<double>(counts[rr]) - (rr == 0 ? e0 : e1);
            worst = std::max(worst, std::abs(centred));
        }
        stats[t] = worst;
    });

    for (const double x : ex.x_grid) {
        std::int64_t hits = 0;
        for (const double s : stats)
            if (s >= x) ++hits;
        const double freq = static_cast<double>(hits) / static_cast<double>(trials);
        const double bound = azuma_bound(ex.azuma_A, x);
        ex.empirical.push_back(freq);
        ex.bounds.push_back(bound);
        ex.stderrs.push_back(std::sqrt(bound * (1.0 - bound) / static_cast<double>(trials)));
    }
    return ex;
}

std::int64_t default_tail_cap(std::int64_t n, std::int64_t N) {
    const double gamma = std::log(static_cast<double>(N)) / std::log(static_cast<double>(n));
    const double clamped = std::min(0.99, std::max(0.01, gamma));
    return choose_M(clamped, 0.25);
}

}  // namespace flatconv
