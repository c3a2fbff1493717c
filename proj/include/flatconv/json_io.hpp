#pragma once

#include <string>

#include "flatconv/concentration.hpp"
#include "flatconv/construct.hpp"
#include "flatconv/density.hpp"
#include "flatconv/metrics.hpp"

namespace flatconv {

// JSON schemas (all round-trips are bit-exact; rational components are
// decimal strings so arbitrary precision survives the trip):
//   SymmetricCounts          {"n", "N", "counts": [int...]}
//   AtomVector               {"n", "num": [str...], "den": [str...]}
//   StepDensity              {"n", "num": [str...], "den": [str...]}
//   PiecewiseLinearPeriodic  {"n", "num": [str...], "den": [str...]}
//   TrialReport              all fields; max_deviation as "num/den"
//   IntervalCover            {"arcs": [{"center": "num/den", "width": "num/den"}...]}

std::string measure_to_json(const SymmetricCounts& m, int indent = 2);
SymmetricCounts measure_from_json(const std::string& text);

std::string atoms_to_json(const AtomVector& v, int indent = 2);
AtomVector atoms_from_json(const std::string& text);

std::string step_density_to_json(const StepDensity& g, int indent = 2);
StepDensity step_density_from_json(const std::string& text);

std::string piecewise_linear_to_json(const PiecewiseLinearPeriodic& f, int indent = 2);
PiecewiseLinearPeriodic piecewise_linear_from_json(const std::string& text);

std::string trial_report_to_json(const TrialReport& r, int indent = 2);
TrialReport trial_report_from_json(const std::string& text);

std::string cover_to_json(const IntervalCover& c, int indent = 2);

std::string metric_breakdown_to_json(const MetricBreakdown& b, int indent = 2);

// CSV emission.  Floating-point columns use 17 significant digits so values
// round-trip; every file starts with a header row.

/// "%.17g" rendering used by every CSV column.
std::string format_double(double v);

/// Header "position,value" and one row per node of g*g.
std::string density_nodes_csv(const PiecewiseLinearPeriodic& f);

/// Header "position,value" and one row per cell of g.
std::string density_cells_csv(const StepDensity& g);

/// Header "n,N,M,max_deviation,bound,mult_max,flat_ok,mult_ok,seed".
std::string trial_csv_header();
std::string trial_csv_row(const TrialReport& r);

/// Header "x,empirical,bound,stderr" plus one row per grid point.
std::string tail_experiment_csv(const TailExperiment& ex);

}  // namespace flatconv
