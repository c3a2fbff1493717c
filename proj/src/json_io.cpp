#include "flatconv/json_io.hpp"

#include <cstdio>

#include <json.hpp>

namespace flatconv {

namespace {

using json = nlohmann::ordered_json;

json rationals_to_json(std::int64_t n, const std::vector<Rational>& values) {
    json num = json::array();
    json den = json::array();
    for (const auto& v : values) {
        num.push_back(numerator(v).str());
        den.push_back(denominator(v).str());
    }
    return json{{"n", n}, {"num", std::move(num)}, {"den", std::move(den)}};
}

std::vector<Rational> rationals_from_json(const json& j) {
    const auto& num = j.at("num");
    const auto& den = j.at("den");
    if (num.size() != den.size()) throw Error("num/den arrays differ in length");
    std::vector<Rational> values;
    values.reserve(num.size());
    for (std::size_t i = 0; i < num.size(); ++i)
        values.emplace_back(BigInt(num[i].get<std::string>()),
                            BigInt(den[i].get<std::string>()));
    return values;
}

}  // namespace

std::string measure_to_json(const SymmetricCounts& m, int indent) {
    json j{{"n", m.n()}, {"N", m.pair_count()}, {"counts", m.counts()}};
    return j.dump(indent);
}

SymmetricCounts measure_from_json(const std::string& text) {
    const json j = json::parse(text);
    return SymmetricCounts(GridSpec(j.at("n").get<std::int64_t>()),
                           j.at("counts").get<std::vector<std::int64_t>>(),
                           j.at("N").get<std::int64_t>());
}

std::string atoms_to_json(const AtomVector& v, int indent) {
    return rationals_to_json(v.n(), v.weights()).dump(indent);
}

AtomVector atoms_from_json(const std::string& text) {
    const json j = json::parse(text);
    return AtomVector(GridSpec(j.at("n").get<std::int64_t>()), rationals_from_json(j));
}

std::string step_density_to_json(const StepDensity& g, int indent) {
    return rationals_to_json(g.n(), g.cell_values()).dump(indent);
}

StepDensity step_density_from_json(const std::string& text) {
    const json j = json::parse(text);
    return StepDensity(GridSpec(j.at("n").get<std::int64_t>()), rationals_from_json(j));
}

std::string piecewise_linear_to_json(const PiecewiseLinearPeriodic& f, int indent) {
    return rationals_to_json(f.n(), f.node_values()).dump(indent);
}

PiecewiseLinearPeriodic piecewise_linear_from_json(const std::string& text) {
    const json j = json::parse(text);
    return PiecewiseLinearPeriodic(GridSpec(j.at("n").get<std::int64_t>()),
                                   rationals_from_json(j));
}

std::string trial_report_to_json(const TrialReport& r, int indent) {
    json j{{"n", r.n},
           {"N", r.N},
           {"M", r.M},
           {"max_deviation", rational_to_string(r.max_deviation)},
           {"flatness_bound", r.flatness_bound},
           {"multiplicity_max", r.multiplicity_max},
           {"flat_ok", r.flat_ok},
           {"mult_ok", r.mult_ok},
           {"attempts_used", r.attempts_used},
           {"seed", r.seed}};
    return j.dump(indent);
}

TrialReport trial_report_from_json(const std::string& text) {
    const json j = json::parse(text);
    TrialReport r;
    r.n = j.at("n").get<std::int64_t>();
    r.N = j.at("N").get<std::int64_t>();
    r.M = j.at("M").get<std::int64_t>();
    r.max_deviation = rational_from_string(j.at("max_deviation").get<std::string>());
    r.flatness_bound = j.at("flatness_bound").get<double>();
    r.multiplicity_max = j.at("multiplicity_max").get<std::int64_t>();
    r.flat_ok = j.at("flat_ok").get<bool>();
    r.mult_ok = j.at("mult_ok").get<bool>();
    r.attempts_used = j.at("attempts_used").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
}

std::string cover_to_json(const IntervalCover& c, int indent) {
    json arcs = json::array();
    for (const auto& a : c.arcs())
        arcs.push_back(json{{"center", rational_to_string(a.center)},
                            {"width", rational_to_string(a.width)}});
    return json{{"arcs", std::move(arcs)}}.dump(indent);
}

std::string metric_breakdown_to_json(const MetricBreakdown& b, int indent) {
    json j{{"hausdorff", rational_to_string(b.hausdorff)},
           {"hausdorff_value", to_double(b.hausdorff)},
           {"fourier_sup", b.fourier_sup},
           {"density_sup", rational_to_string(b.density_sup)},
           {"density_sup_value", to_double(b.density_sup)},
           {"measure_distance", b.measure_distance},
           {"density_distance", b.density_distance}};
    return j.dump(indent);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string density_nodes_csv(const PiecewiseLinearPeriodic& f) {
    std::string out = "position,value\n";
    const std::int64_t n = f.n();
    for (std::int64_t k = 0; k < n; ++k) {
        out += format_double(static_cast<double>(k) / static_cast<double>(n));
        out += ',';
        out += format_double(to_double(f.node_values()[k]));
        out += '\n';
    }
    return out;
}

std::string density_cells_csv(const StepDensity& g) {
    std::string out = "position,value\n";
    const std::int64_t n = g.n();
    for (std::int64_t k = 0; k < n; ++k) {
        out += format_double(static_cast<double>(k) / static_cast<double>(n));
        out += ',';
        out += format_double(to_double(g.cell_values()[k]));
        out += '\n';
    }
    return out;
}

std::string trial_csv_header() {
    return "n,N,M,max_deviation,bound,mult_max,flat_ok,mult_ok,seed\n";
}

std::string trial_csv_row(const TrialReport& r) {
    std::string out;
    out += std::to_string(r.n) + ',';
    out += std::to_string(r.N) + ',';
    out += std::to_string(r.M) + ',';
    out += format_double(to_double(r.max_deviation)) + ',';
    out += format_double(r.flatness_bound) + ',';
    out += std::to_string(r.multiplicity_max) + ',';
    out += std::string(r.flat_ok ? "1" : "0") + ',';
    out += std::string(r.mult_ok ? "1" : "0") + ',';
    out += std::to_string(r.seed) + '\n';
    return out;
}

std::string tail_experiment_csv(const TailExperiment& ex) {
    std::string out = "x,empirical,bound,stderr\n";
    for (std::size_t i = 0; i < ex.x_grid.size(); ++i) {
        out += format_double(ex.x_grid[i]) + ',';
        out += format_double(ex.empirical[i]) + ',';
        out += format_double(ex.bounds[i]) + ',';
        out += format_double(ex.stderrs[i]) + '\n';
    }
    return out;
}

}  // namespace flatconv
