#include <doctest.h>

#include <cmath>
#include <functional>

#include "flatconv/concentration.hpp"
#include "flatconv/json_io.hpp"
#include "helpers.hpp"

using namespace flatconv;

namespace {

// Exact binomial upper tail P(Bin(N, p) >= m).
Rational exact_binomial_tail(std::int64_t N, const Rational& p, int m) {
    if (m > N) return Rational(0);
    const Rational q = 1 - p;
    Rational tail = 0;
    for (std::int64_t j = m; j <= N; ++j) {
        BigInt binom = 1;
        for (std::int64_t i = 0; i < j; ++i) binom = binom * (N - i) / (i + 1);
        Rational term(binom);
        for (std::int64_t i = 0; i < j; ++i) term *= p;
        for (std::int64_t i = 0; i < N - j; ++i) term *= q;
        tail += term;
    }
    return tail;
}

// E[P(r)/4 | first samples] by exhausting the remaining draws.
Rational enumerated_quarter_expectation(std::int64_t n, std::vector<std::int64_t> prefix,
                                        std::int64_t horizon, std::int64_t r) {
    const std::int64_t rr = ((r % n) + n) % n;
    BigInt numer = 0;
    BigInt tuples = 0;
    std::function<void()> recurse = [&]() {
        if (static_cast<std::int64_t>(prefix.size()) == horizon) {
            numer += pair_counts(from_points(GridSpec(n), prefix))[rr];
            ++tuples;
            return;
        }
        for (std::int64_t x = 1; x < n; ++x) {
            prefix.push_back(x);
            recurse();
            prefix.pop_back();
        }
    };
    recurse();
    return Rational(numer) / (4 * Rational(tuples));
}

}  // namespace

TEST_CASE("binomial tail bound: formula values and hypothesis checks") {
    CHECK(binomial_tail_bound(10, 0.05, 2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(binomial_tail_bound(10, 0.2, 2), OutOfHypothesis);   // Np = 2
    CHECK_THROWS_AS(binomial_tail_bound(10, 0.05, 1), OutOfHypothesis);  // m < 2
    CHECK_THROWS_AS(binomial_tail_bound(10, 0.0, 2), OutOfHypothesis);   // Np = 0
}

TEST_CASE("binomial tail bound dominates the exact tail") {
    // the worked example: N=10, p=1/20, m=2
    const Rational tail = exact_binomial_tail(10, Rational(1, 20), 2);
    CHECK(to_double(tail) == doctest::Approx(0.086138).epsilon(1e-4));
    CHECK(tail <= Rational(1, 4));

    // large m: the bound collapses and the exact tail is smaller still
    const double bound = binomial_tail_bound(40, 0.0125, 20);  // Np = 0.5
    CHECK(bound < 1e-12);
    const Rational exact = exact_binomial_tail(40, Rational(1, 80), 20);
    CHECK(exact < Rational(BigInt(1), BigInt("1000000000000")));
    CHECK(to_double(exact) <= bound);
}

TEST_CASE("azuma bound values and guards") {
    CHECK(azuma_bound(1.0, 0.0) == 1.0);
    CHECK(azuma_bound(1.0, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(azuma_bound(0.0, 1.0), InvalidVariance);
    CHECK_THROWS_AS(azuma_bound(-2.0, 1.0), InvalidVariance);
    CHECK(azuma_variance_proxy(101, 16, 6) ==
          doctest::Approx(8.0 * 256.0 * 37.0 / 101.0).epsilon(1e-15));
}

TEST_CASE("expected pair count matches exhaustive enumeration") {
    for (std::int64_t n : {5, 7}) {
        for (std::int64_t N : {1, 2}) {
            for (std::int64_t r = 0; r < n; ++r) {
                CHECK(expected_quarter_pair_count(n, N, r) ==
                      enumerated_quarter_expectation(n, {}, N, r));
            }
        }
    }
}

TEST_CASE("empty sample list gives the trivial path") {
    const auto path = increment_sequence(7, {}, 3, 5);
    CHECK(path.increments.empty());
    CHECK(path.partial_sums == std::vector<Rational>{Rational(0)});
    CHECK_FALSE(path.cap_tripped);
}

TEST_CASE("increments match the exhaustive conditional-expectation oracle") {
    const std::int64_t n = 7;
    const std::int64_t N = 3;
    Rng rng(404);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<std::int64_t> samples;
        for (std::int64_t i = 0; i < N; ++i) samples.push_back(rng.uniform_residue(n));
        const std::int64_t r = static_cast<std::int64_t>(rng.uniform_below(7));
        const auto path = increment_sequence(n, samples, r, 99);
        REQUIRE_FALSE(path.cap_tripped);
        Rational prev_cond = enumerated_quarter_expectation(n, {}, N, r);
        std::vector<std::int64_t> prefix;
        for (std::int64_t j = 1; j <= N; ++j) {
            prefix.push_back(samples[j - 1]);
            const Rational cond = enumerated_quarter_expectation(n, prefix, N, r);
            CHECK(path.increments[j - 1] == cond - prev_cond);
            prev_cond = cond;
        }
    }
}

TEST_CASE("conditional mean of every increment is exactly zero") {
    const std::int64_t n = 7;
    for (std::int64_t N : {1, 2, 3}) {
        for (std::int64_t M : {2, 99}) {
            for (std::int64_t r = 0; r < n; ++r) {
                // walk over every prefix of length j-1
                std::function<void(std::vector<std::int64_t>&)> visit =
                    [&](std::vector<std::int64_t>& prefix) {
                        const std::int64_t j =
                            static_cast<std::int64_t>(prefix.size()) + 1;
                        if (j > N) return;
                        Rational mean = 0;
                        for (std::int64_t x = 1; x < n; ++x) {
                            std::vector<std::int64_t> samples = prefix;
                            samples.push_back(x);
                            samples.resize(static_cast<std::size_t>(N), 1);  // suffix irrelevant
                            mean += increment_sequence(n, samples, r, M)
                                        .increments[static_cast<std::size_t>(j - 1)];
                        }
                        CHECK(mean == Rational(0));
                        for (std::int64_t x = 1; x < n; ++x) {
                            prefix.push_back(x);
                            visit(prefix);
                            prefix.pop_back();
                        }
                    };
                std::vector<std::int64_t> prefix;
                visit(prefix);
            }
        }
    }
}

TEST_CASE("cap rule: repeated samples zero out the tail of the path") {
    // M = 1 trips as soon as any sample has been seen
    const auto path = increment_sequence(5, {1, 1, 2}, 2, 1);
    CHECK(path.cap_tripped);
    CHECK(path.trip_step == 2);
    CHECK(path.increments[1] == Rational(0));
    CHECK(path.increments[2] == Rational(0));
    CHECK(path.increments[0] != Rational(0));

    // once tripped, always tripped
    Rng rng(405);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<std::int64_t> samples;
        for (int i = 0; i < 6; ++i) samples.push_back(rng.uniform_residue(9));
        const auto p = increment_sequence(9, samples, 1, 2);
        if (!p.cap_tripped) continue;
        for (std::size_t j = static_cast<std::size_t>(p.trip_step); j <= samples.size(); ++j)
            CHECK(p.increments[j - 1] == Rational(0));
    }
}

TEST_CASE("partial sums telescope the increments") {
    Rng rng(406);
    std::vector<std::int64_t> samples;
    for (int i = 0; i < 5; ++i) samples.push_back(rng.uniform_residue(11));
    const auto path = increment_sequence(11, samples, 4, 99);
    Rational acc = 0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        acc += path.increments[j];
        CHECK(path.partial_sums[j + 1] == acc);
    }
}

TEST_CASE("telescoping identity: examples and random sweep") {
    // the single-pair toy: 2 of the 4 signed pairs land on the origin
    CHECK(pair_counts(from_points(GridSpec(5), {1}))[0] == 2);
    CHECK(telescoping_identity_check(5, {1}, 0, 99));

    Rng rng(407);
    int checked = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::int64_t n = 5 + 2 * static_cast<std::int64_t>(rng.uniform_below(4));
        const std::int64_t N = 1 + static_cast<std::int64_t>(rng.uniform_below(6));
        std::vector<std::int64_t> samples;
        for (std::int64_t i = 0; i < N; ++i) samples.push_back(rng.uniform_residue(n));
        const std::int64_t r = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(n)));
        // M = 2N + 1 can never trip
        CHECK(telescoping_identity_check(n, samples, r, 2 * N + 1));
        ++checked;
    }
    CHECK(checked == 1000);

    CHECK_THROWS_AS(telescoping_identity_check(5, {1, 1}, 2, 1), CapTripped);
}

TEST_CASE("deviation tail experiment: shape, endpoints and domination") {
    const auto ex = deviation_tail_experiment(101, 16, 6, 400, 2024);
    CHECK(ex.x_grid.size() == 17);
    CHECK(ex.x_grid.front() == 0.0);
    CHECK(ex.empirical.front() == 1.0);
    CHECK(ex.bounds.front() == 1.0);
    CHECK(ex.azuma_A == doctest::Approx(750.257).epsilon(1e-4));
    for (std::size_t i = 0; i < ex.x_grid.size(); ++i) {
        CHECK(ex.empirical[i] <= ex.bounds[i] + 3.0 * ex.stderrs[i]);
        if (i > 0) CHECK(ex.empirical[i] <= ex.empirical[i - 1]);
        CHECK(ex.empirical[i] >= 0.0);
        CHECK(ex.empirical[i] <= 1.0);
    }

    // determinism
    const auto again = deviation_tail_experiment(101, 16, 6, 400, 2024);
    CHECK(again.empirical == ex.empirical);
    CHECK(tail_experiment_csv(again) == tail_experiment_csv(ex));
}

TEST_CASE("tail experiment results do not depend on the worker count") {
    setenv("FLATCONV_THREADS", "1", 1);
    const auto serial = deviation_tail_experiment(101, 16, 6, 200, 99);
    setenv("FLATCONV_THREADS", "4", 1);
    const auto parallel = deviation_tail_experiment(101, 16, 6, 200, 99);
    unsetenv("FLATCONV_THREADS");
    CHECK(serial.empirical == parallel.empirical);
    CHECK(serial.bounds == parallel.bounds);
}

TEST_CASE("quadrupling the trials halves the standard error band") {
    const auto small = deviation_tail_experiment(101, 16, 6, 100, 5);
    const auto large = deviation_tail_experiment(101, 16, 6, 400, 5);
    for (std::size_t i = 1; i < small.x_grid.size(); ++i) {
        CHECK(large.bounds[i] == small.bounds[i]);
        CHECK(large.stderrs[i] == doctest::Approx(0.5 * small.stderrs[i]).epsilon(1e-12));
    }
}

TEST_CASE("default tail cap matches the construction-side choice") {
    // N = 16 on n = 101 has effective exponent just above 0.6
    CHECK(default_tail_cap(101, 16) == 8);
}
