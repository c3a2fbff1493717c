// flatconv: construct symmetric grid measures with near-flat autoconvolution,
// sweep parameters, compute the metric toolkit, and run tail experiments.
//
// Exit codes: 0 success, 1 construction exhausted / verification failed,
// 2 usage error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatconv/concentration.hpp"
#include "flatconv/construct.hpp"
#include "flatconv/json_io.hpp"
#include "flatconv/metrics.hpp"
#include "flatconv/parallel.hpp"

namespace {

using namespace flatconv;

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw Error("failed writing " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string report_with_params_json(const TrialReport& rep, const ConstructionParams& p) {
    // wrap the report with the run parameters so `verify` can recompute it
    std::string inner = trial_report_to_json(rep, 2);
    std::string params = std::string("{\n    \"gamma\": ") + format_double(p.gamma) +
                         ",\n    \"epsilon\": " + format_double(p.epsilon) +
                         ",\n    \"phi\": \"" + phi_name(p.phi) +
                         "\",\n    \"max_attempts\": " + std::to_string(p.max_attempts) + "\n  }";
    // indent the inner report by two spaces to nest it
    std::string indented;
    std::istringstream lines(inner);
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
        if (!first) indented += "\n  ";
        indented += line;
        first = false;
    }
    return "{\n  \"params\": " + params + ",\n  \"report\": " + indented + "\n}\n";
}

struct ConstructCli {
    std::int64_t n = 0;
    ConstructionParams params;
    std::string phi = "log";
    std::string out;
};

int run_construct(const ConstructCli& cli) {
    ConstructionParams p = cli.params;
    p.phi = phi_from_name(cli.phi);
    const std::string prefix =
        cli.out.empty() ? "construct_n" + std::to_string(cli.n) + "_seed" + std::to_string(p.seed)
                        : cli.out;
    try {
        const auto [measure, report] = construct(p, cli.n);
        write_file(prefix + ".report.json", report_with_params_json(report, p));
        write_file(prefix + ".measure.json", measure_to_json(measure) + "\n");
        const auto gg = autoconvolve_density(build_step_density(measure));
        write_file(prefix + ".gg.csv", density_nodes_csv(gg));
        std::cout << "accepted n=" << report.n << " N=" << report.N
                  << " attempts=" << report.attempts_used
                  << " max_deviation=" << rational_to_string(report.max_deviation)
                  << " bound=" << format_double(report.flatness_bound) << "\n";
        return 0;
    } catch (const ExhaustedAttempts& e) {
        write_file(prefix + ".report.json", report_with_params_json(e.best, p));
        std::cout << "exhausted " << p.max_attempts << " attempts at n=" << cli.n
                  << "; best max_deviation=" << rational_to_string(e.best.max_deviation)
                  << " bound=" << format_double(e.best.flatness_bound) << "\n";
        return 1;
    }
}

struct SweepCli {
    std::vector<std::int64_t> n_list;
    int seeds = 100;
    std::uint64_t base_seed = 0;
    ConstructionParams params;
    std::string phi = "log";
    std::string out = "sweep.csv";
};

int run_sweep(const SweepCli& cli) {
    ConstructionParams p = cli.params;
    p.phi = phi_from_name(cli.phi);
    std::vector<std::int64_t> ns = cli.n_list;
    std::sort(ns.begin(), ns.end());

    std::string body = trial_csv_header();
    std::string summary;
    for (const std::int64_t n : ns) {
        GridSpec grid(n);
        const std::int64_t N = pair_count_for(p.gamma, n);
        std::vector<TrialReport> reports(static_cast<std::size_t>(cli.seeds));
        parallel_for(static_cast<std::size_t>(cli.seeds), [&](std::size_t i) {
            ConstructionParams trial = p;
            trial.seed = cli.base_seed + static_cast<std::uint64_t>(i);
            Rng stream(derive_seed(trial.seed, 1));
            const auto m = sample_points(grid, N, stream);
            reports[i] = check_trial(m, trial);
        });
        std::vector<double> devs;
        devs.reserve(reports.size());
        int successes = 0;
        for (const auto& rep : reports) {
            body += trial_csv_row(rep);
            devs.push_back(to_double(rep.max_deviation));
            if (rep.flat_ok && rep.mult_ok) ++successes;
        }
        std::sort(devs.begin(), devs.end());
        const std::size_t mid = devs.size() / 2;
        const double median = devs.size() % 2 == 1 ? devs[mid] : 0.5 * (devs[mid - 1] + devs[mid]);
        summary += "# summary,n=" + std::to_string(n) + ",N=" + std::to_string(N) +
                   ",success_rate=" +
                   format_double(static_cast<double>(successes) / static_cast<double>(cli.seeds)) +
                   ",median_max_deviation=" + format_double(median) + "\n";
    }
    write_file(cli.out, body + summary);
    std::cout << "wrote " << cli.out << "\n";
    return 0;
}

struct TailsCli {
    std::int64_t n = 101;
    std::int64_t N = 0;
    std::int64_t M = 0;  // 0 = derive from n, N
    std::int64_t trials = 2000;
    std::uint64_t seed = 0;
    int grid_points = 17;
    std::string out = "tails.csv";
};

int run_tails(const TailsCli& cli) {
    const std::int64_t N = cli.N == 0 ? pair_count_for(0.6, cli.n) : cli.N;
    const std::int64_t M = cli.M == 0 ? default_tail_cap(cli.n, N) : cli.M;
    const auto ex = deviation_tail_experiment(cli.n, N, M, cli.trials, cli.seed, cli.grid_points);
    write_file(cli.out, tail_experiment_csv(ex));
    std::cout << "wrote " << cli.out << " (n=" << ex.n << " N=" << ex.N << " M=" << ex.M
              << " A=" << format_double(ex.azuma_A) << ")\n";
    return 0;
}

struct MetricsCli {
    std::string a, b;
    std::string out;
};

int run_metrics(const MetricsCli& cli) {
    const auto m1 = measure_from_json(read_file(cli.a));
    const auto m2 = measure_from_json(read_file(cli.b));
    const std::string text = metric_breakdown_to_json(metric_breakdown(m1, m2)) + "\n";
    if (cli.out.empty())
        std::cout << text;
    else {
        write_file(cli.out, text);
        std::cout << "wrote " << cli.out << "\n";
    }
    return 0;
}

struct VerifyCli {
    std::string measure;
    std::string report;
};

int run_verify(const VerifyCli& cli) {
    const auto m = measure_from_json(read_file(cli.measure));
    const auto wrapped = nlohmann::ordered_json::parse(read_file(cli.report));
    const auto rep = trial_report_from_json(wrapped.at("report").dump());
    ConstructionParams p;
    p.gamma = wrapped.at("params").at("gamma").get<double>();
    p.epsilon = wrapped.at("params").at("epsilon").get<double>();
    p.phi = phi_from_name(wrapped.at("params").at("phi").get<std::string>());
    p.seed = rep.seed;

    bool ok = true;
    const auto fail = [&ok](const std::string& what) {
        std::cout << "mismatch: " << what << "\n";
        ok = false;
    };

    if (m.n() != rep.n) fail("grid order");
    if (m.pair_count() != rep.N) fail("pair count");
    if (pair_count_for(p.gamma, rep.n) != rep.N) fail("N vs floor(n^gamma)");
    if (choose_M(p.gamma, 0.25) != rep.M) fail("multiplicity target M");
    if (multiplicity_max(m) != rep.multiplicity_max) fail("multiplicity_max");
    if (max_flatness_deviation_nonzero(autoconvolve(m)) != rep.max_deviation)
        fail("max_deviation");
    if (flatness_bound(p, rep.n, rep.N) != rep.flatness_bound) fail("flatness_bound");
    if (rep.flat_ok != (rep.max_deviation <= Rational(rep.flatness_bound))) fail("flat_ok flag");
    if (rep.mult_ok != (rep.multiplicity_max < rep.M)) fail("mult_ok flag");

    std::cout << (ok ? "verified: report matches an independent recomputation\n"
                     : "verification FAILED\n");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric grid measures with near-flat autoconvolution"};
    app.require_subcommand(1);

    const auto odd_check = CLI::Validator(
        [](std::string& s) -> std::string {
            try {
                if (std::stoll(s) % 2 == 0) return "n must be odd";
            } catch (...) {
                return "not an integer";
            }
            return {};
        },
        "ODD");

    ConstructCli ccli;
    auto* c = app.add_subcommand("construct", "sample until both acceptance checks pass");
    c->add_option("--n", ccli.n, "grid order (odd, >= 3)")->required()->check(odd_check);
    c->add_option("--gamma", ccli.params.gamma, "exponent: N = floor(n^gamma)");
    c->add_option("--epsilon", ccli.params.epsilon, "flatness slack");
    c->add_option("--phi", ccli.phi, "scale sequence: log, loglog or sqrtlog");
    c->add_option("--seed", ccli.params.seed, "run seed");
    c->add_option("--max-attempts", ccli.params.max_attempts, "attempt budget");
    c->add_option("--out", ccli.out, "output prefix (default construct_n<n>_seed<seed>)");

    SweepCli scli;
    auto* s = app.add_subcommand("sweep", "one trial per seed over a ladder of n");
    s->add_option("--n-list", scli.n_list, "grid orders (odd)")
        ->required()
        ->delimiter(',')
        ->check(odd_check);
    s->add_option("--seeds", scli.seeds, "seeds per n")->check(CLI::PositiveNumber);
    s->add_option("--base-seed", scli.base_seed, "first seed; trial i uses base+i");
    s->add_option("--gamma", scli.params.gamma, "exponent: N = floor(n^gamma)");
    s->add_option("--epsilon", scli.params.epsilon, "flatness slack");
    s->add_option("--phi", scli.phi, "scale sequence: log, loglog or sqrtlog");
    s->add_option("--out", scli.out, "output CSV path");

    TailsCli tcli;
    auto* t = app.add_subcommand("tails", "empirical deviation tails vs the Azuma curve");
    t->add_option("--n", tcli.n, "grid order (odd)")->required()->check(odd_check);
    t->add_option("--N", tcli.N, "draws per trial (default floor(n^0.6))");
    t->add_option("--M", tcli.M, "multiplicity parameter in A (default derived)");
    t->add_option("--trials", tcli.trials, "number of simulated rounds")
        ->check(CLI::PositiveNumber);
    t->add_option("--seed", tcli.seed, "run seed");
    t->add_option("--grid-points", tcli.grid_points, "x grid resolution")
        ->check(CLI::PositiveNumber);
    t->add_option("--out", tcli.out, "output CSV path");

    MetricsCli mcli;
    auto* mc = app.add_subcommand("metrics", "distance breakdown between two measures");
    mc->add_option("--a", mcli.a, "first measure JSON")->required();
    mc->add_option("--b", mcli.b, "second measure JSON")->required();
    mc->add_option("--out", mcli.out, "output JSON path (default stdout)");

    VerifyCli vcli;
    auto* v = app.add_subcommand("verify", "re-check a report against its measure");
    v->add_option("--measure", vcli.measure, "measure JSON")->required();
    v->add_option("--report", vcli.report, "report JSON written by construct")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c) return run_construct(ccli);
        if (*s) return run_sweep(scli);
        if (*t) return run_tails(tcli);
        if (*mc) return run_metrics(mcli);
        if (*v) return run_verify(vcli);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
