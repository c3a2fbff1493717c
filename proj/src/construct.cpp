#include "flatconv/construct.hpp"

#include <cmath>
#include <optional>

namespace flatconv {

double phi_value(Phi phi, std::int64_t n) {
    const double ln = std::log(static_cast<double>(n));
    switch (phi) {
        case Phi::Log: return ln;
        case Phi::LogLog: return std::log(ln);
        case Phi::SqrtLog: return std::sqrt(ln);
    }
    throw Error("unknown phi");
}

Phi phi_from_name(const std::string& name) {
    if (name == "log") return Phi::Log;
    if (name == "loglog") return Phi::LogLog;
    if (name == "sqrtlog") return Phi::SqrtLog;
    throw Error("unknown phi name: " + name + " (expected log, loglog or sqrtlog)");
}

std::string phi_name(Phi phi) {
    switch (phi) {
        case Phi::Log: return "log";
        case Phi::LogLog: return "loglog";
        case Phi::SqrtLog: return "sqrtlog";
    }
    throw Error("unknown phi");
}

void ConstructionParams::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0)) throw Error("gamma must lie in (0,1)");
    if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
    if (max_attempts < 1) throw Error("max_attempts must be >= 1");
}

std::int64_t pair_count_for(double gamma, std::int64_t n) {
    return static_cast<std::int64_t>(
        std::floor(std::pow(static_cast<double>(n), gamma) + 1e-9));
}

SymmetricCounts sample_points(GridSpec grid, std::int64_t N, Rng& stream) {
    if (N < 1) throw EmptyMeasure("N must be >= 1");
    if (N >= grid.n) throw TooManyPoints("N must be < n");
    std::vector<std::int64_t> pts;
    pts.reserve(static_cast<std::size_t>(N));
    for (std::int64_t i = 0; i < N; ++i) pts.push_back(stream.uniform_residue(grid.n));
    return from_points(grid, pts);
}

namespace {

// n^2 * 2 (2 n^{gamma-1} * n/(n-1))^m / m!
double multiplicity_union_envelope(double gamma, int m, double n) {
    const double base = 2.0 * std::pow(n, gamma - 1.0) * (n / (n - 1.0));
    double value = 2.0 * n * n;
    for (int i = 1; i <= m; ++i) value *= base / static_cast<double>(i);
    return value;
}

}  // namespace

int choose_M(double gamma, double epsilon) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw Error("gamma must lie in (0,1)");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("epsilon must lie in (0,1)");
    for (int m = 2; m <= 4096; ++m) {
        if ((gamma - 1.0) * m + 2.0 > 0.0) continue;  // envelope not monotone yet
        if (multiplicity_union_envelope(gamma, m, 3.0) <= epsilon) return m;
    }
    throw Error("choose_M: no feasible cap found");  // unreachable for gamma < 1
}

std::int64_t multiplicity_max(const SymmetricCounts& m) {
    std::int64_t best = 0;
    for (const std::int64_t c : m.counts()) best = std::max(best, c);
    return best;
}

double flatness_bound(const ConstructionParams& p, std::int64_t n, std::int64_t N) {
    const double nd = static_cast<double>(n);
    return 2.0 * p.epsilon * phi_value(p.phi, n) * std::sqrt(std::log(nd)) /
           (static_cast<double>(N) * std::sqrt(nd));
}

TrialReport check_trial(const SymmetricCounts& m, const ConstructionParams& p) {
    p.validate();
    const std::int64_t n = m.n();
    const std::int64_t N = m.pair_count();

    TrialReport rep;
    rep.n = n;
    rep.N = N;
    rep.M = choose_M(p.gamma, 0.25);
    rep.seed = p.seed;
    rep.attempts_used = 1;

    // max_{k != 0} |P_k/(4N^2) - 1/n| over the common denominator 4 N^2 n;
    // identical to max_flatness_deviation_nonzero(autoconvolve(m)) but with a
    // single integer scan
    const auto p_counts = pair_counts(m);
    std::int64_t worst = 0;
    // int64 path is safe while 4 N^2 n <= 4 * (5e5)^2 * 2e6 = 2e18 < 2^63
    if (N <= 500000 && n <= 2000000) {
        const std::int64_t denom = 4 * N * N;
        for (std::int64_t k = 1; k < n; ++k) {
            std::int64_t d = p_counts[k] * n - denom;
            if (d < 0) d = -d;
            worst = std::max(worst, d);
        }
        rep.max_deviation = Rational(worst, denom * n);
    } else {
        const BigInt denom = BigInt(4) * N * N;
        BigInt top = 0;
        for (std::int64_t k = 1; k < n; ++k) {
            BigInt d = BigInt(p_counts[k]) * n - denom;
            if (d < 0) d = -d;
            top = std::max(top, d);
        }
        rep.max_deviation = Rational(top, denom * n);
    }

    rep.flatness_bound = flatness_bound(p, n, N);
    rep.multiplicity_max = multiplicity_max(m);
    rep.flat_ok = rep.max_deviation <= Rational(rep.flatness_bound);
    rep.mult_ok = rep.multiplicity_max < rep.M;
    return rep;
}

std::pair<SymmetricCounts, TrialReport> construct(const ConstructionParams& p, std::int64_t n) {
    p.validate();
    GridSpec grid(n);
    const std::int64_t N = pair_count_for(p.gamma, n);
    if (N < 1) throw EmptyMeasure("floor(n^gamma) must be >= 1");

    std::optional<TrialReport> best;
    for (int attempt = 1; attempt <= p.max_attempts; ++attempt) {
        Rng stream(derive_seed(p.seed, static_cast<std::uint64_t>(attempt)));
        SymmetricCounts m = sample_points(grid, N, stream);
        TrialReport rep = check_trial(m, p);
        rep.attempts_used = attempt;
        if (rep.flat_ok && rep.mult_ok) return {std::move(m), std::move(rep)};
        if (!best || rep.max_deviation < best->max_deviation) best = rep;
    }
    throw ExhaustedAttempts(*best);
}

}  // namespace flatconv
