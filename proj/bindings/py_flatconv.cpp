#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flatconv/concentration.hpp"
#include "flatconv/construct.hpp"
#include "flatconv/density.hpp"
#include "flatconv/json_io.hpp"
#include "flatconv/metrics.hpp"

namespace py = pybind11;
using namespace flatconv;

namespace {

py::object to_fraction(const Rational& r) {
    return py::module_::import("fractions").attr("Fraction")(rational_to_string(r));
}

py::list to_fractions(const std::vector<Rational>& values) {
    py::list out;
    for (const auto& v : values) out.append(to_fraction(v));
    return out;
}

Rational rational_from_object(const py::handle& obj) {
    if (py::isinstance<py::int_>(obj)) return Rational(BigInt(py::str(obj).cast<std::string>()));
    if (py::isinstance<py::float_>(obj)) return Rational(obj.cast<double>());
    // Fraction and strings both print as "num/den" or a bare integer
    return rational_from_string(py::str(obj).cast<std::string>());
}

std::vector<Rational> rationals_from_sequence(const py::sequence& seq) {
    std::vector<Rational> out;
    out.reserve(seq.size());
    for (const auto& item : seq) out.push_back(rational_from_object(item));
    return out;
}

ConstructionParams make_params(double gamma, double epsilon, const std::string& phi,
                               std::uint64_t seed, int max_attempts) {
    ConstructionParams p;
    p.gamma = gamma;
    p.epsilon = epsilon;
    p.phi = phi_from_name(phi);
    p.seed = seed;
    p.max_attempts = max_attempts;
    p.validate();
    return p;
}

}  // namespace

PYBIND11_MODULE(_flatconv, m) {
    m.doc() = "Symmetric atomic measures on the cyclic grid with near-flat autoconvolution";

    // translators run newest-first: register the base before the derived so
    // ExhaustedAttempts is not swallowed by the generic handler
    py::register_exception<Error>(m, "FlatconvError", PyExc_ValueError);
    py::register_exception<ExhaustedAttempts>(m, "ExhaustedAttemptsError", PyExc_RuntimeError);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<std::int64_t>(), py::arg("n"))
        .def_readonly("n", &GridSpec::n)
        .def("__repr__",
             [](const GridSpec& g) { return "GridSpec(n=" + std::to_string(g.n) + ")"; });

    py::class_<SymmetricCounts>(m, "SymmetricCounts")
        .def(py::init([](std::int64_t n, const std::vector<std::int64_t>& counts,
                         std::int64_t pair_count) {
                 return SymmetricCounts(GridSpec(n), counts, pair_count);
             }),
             py::arg("n"), py::arg("counts"), py::arg("N"))
        .def_property_readonly("n", &SymmetricCounts::n)
        .def_property_readonly("N", &SymmetricCounts::pair_count)
        .def_property_readonly("counts", &SymmetricCounts::counts)
        .def("support", &SymmetricCounts::support)
        .def("mass_at", [](const SymmetricCounts& m, std::int64_t k) {
            return to_fraction(m.mass_at(k));
        })
        .def("to_json", [](const SymmetricCounts& m) { return measure_to_json(m); })
        .def_static("from_json", [](const std::string& text) { return measure_from_json(text); })
        .def("__eq__", [](const SymmetricCounts& a, const SymmetricCounts& b) { return a == b; })
        .def("__repr__", [](const SymmetricCounts& m) {
            return "SymmetricCounts(n=" + std::to_string(m.n()) +
                   ", N=" + std::to_string(m.pair_count()) + ")";
        });

    py::class_<AtomVector>(m, "AtomVector")
        .def_property_readonly("n", &AtomVector::n)
        .def_property_readonly("weights",
                               [](const AtomVector& v) { return to_fractions(v.weights()); })
        .def_property_readonly("weights_float",
                               [](const AtomVector& v) {
                                   std::vector<double> out;
                                   out.reserve(v.weights().size());
                                   for (const auto& w : v.weights()) out.push_back(to_double(w));
                                   return out;
                               })
        .def("to_json", [](const AtomVector& v) { return atoms_to_json(v); })
        .def_static("from_json", [](const std::string& text) { return atoms_from_json(text); })
        .def("__eq__", [](const AtomVector& a, const AtomVector& b) { return a == b; });

    py::class_<StepDensity>(m, "StepDensity")
        .def_property_readonly("n", &StepDensity::n)
        .def_property_readonly("cell_values",
                               [](const StepDensity& g) { return to_fractions(g.cell_values()); })
        .def("integral", [](const StepDensity& g) { return to_fraction(g.integral()); })
        .def("to_json", [](const StepDensity& g) { return step_density_to_json(g); })
        .def("to_csv", [](const StepDensity& g) { return density_cells_csv(g); });

    py::class_<PiecewiseLinearPeriodic>(m, "PiecewiseLinearPeriodic")
        .def_property_readonly("n", &PiecewiseLinearPeriodic::n)
        .def_property_readonly("node_values",
                               [](const PiecewiseLinearPeriodic& f) {
                                   return to_fractions(f.node_values());
                               })
        .def("value_at",
             [](const PiecewiseLinearPeriodic& f, const py::handle& x) {
                 return to_fraction(f.value_at(rational_from_object(x)));
             })
        .def("integral",
             [](const PiecewiseLinearPeriodic& f) { return to_fraction(f.integral()); })
        .def("to_json",
             [](const PiecewiseLinearPeriodic& f) { return piecewise_linear_to_json(f); })
        .def("to_csv", [](const PiecewiseLinearPeriodic& f) { return density_nodes_csv(f); });

    py::class_<TrialReport>(m, "TrialReport")
        .def_readonly("n", &TrialReport::n)
        .def_readonly("N", &TrialReport::N)
        .def_readonly("M", &TrialReport::M)
        .def_property_readonly("max_deviation",
                               [](const TrialReport& r) { return to_fraction(r.max_deviation); })
        .def_readonly("flatness_bound", &TrialReport::flatness_bound)
        .def_readonly("multiplicity_max", &TrialReport::multiplicity_max)
        .def_readonly("flat_ok", &TrialReport::flat_ok)
        .def_readonly("mult_ok", &TrialReport::mult_ok)
        .def_readonly("attempts_used", &TrialReport::attempts_used)
        .def_readonly("seed", &TrialReport::seed)
        .def("to_json", [](const TrialReport& r) { return trial_report_to_json(r); })
        .def("__repr__", [](const TrialReport& r) {
            return "TrialReport(n=" + std::to_string(r.n) + ", N=" + std::to_string(r.N) +
                   ", flat_ok=" + (r.flat_ok ? std::string("True") : std::string("False")) +
                   ", mult_ok=" + (r.mult_ok ? std::string("True") : std::string("False")) + ")";
        });

    py::class_<FiniteSymmetricSet>(m, "FiniteSymmetricSet")
        .def(py::init([](const py::sequence& pts) {
                 return FiniteSymmetricSet(rationals_from_sequence(pts));
             }),
             py::arg("points"))
        .def_static("closure",
                    [](const py::sequence& pts) {
                        return FiniteSymmetricSet::closure(rationals_from_sequence(pts));
                    })
        .def_property_readonly("points",
                               [](const FiniteSymmetricSet& s) { return to_fractions(s.points()); })
        .def("__len__", &FiniteSymmetricSet::size);

    py::class_<IntervalCover>(m, "IntervalCover")
        .def_property_readonly("arcs",
                               [](const IntervalCover& c) {
                                   py::list out;
                                   for (const auto& a : c.arcs())
                                       out.append(py::make_tuple(to_fraction(a.center),
                                                                 to_fraction(a.width)));
                                   return out;
                               })
        .def("covers", [](const IntervalCover& c, const py::handle& x) {
            return c.covers(rational_from_object(x));
        })
        .def("to_json", [](const IntervalCover& c) { return cover_to_json(c); });

    py::class_<MartingalePath>(m, "MartingalePath")
        .def_property_readonly("increments",
                               [](const MartingalePath& p) { return to_fractions(p.increments); })
        .def_property_readonly("partial_sums",
                               [](const MartingalePath& p) { return to_fractions(p.partial_sums); })
        .def_readonly("cap_tripped", &MartingalePath::cap_tripped)
        .def_readonly("trip_step", &MartingalePath::trip_step);

    py::class_<TailExperiment>(m, "TailExperiment")
        .def_readonly("n", &TailExperiment::n)
        .def_readonly("N", &TailExperiment::N)
        .def_readonly("M", &TailExperiment::M)
        .def_readonly("trials", &TailExperiment::trials)
        .def_readonly("seed", &TailExperiment::seed)
        .def_readonly("azuma_A", &TailExperiment::azuma_A)
        .def_readonly("x_grid", &TailExperiment::x_grid)
        .def_readonly("empirical", &TailExperiment::empirical)
        .def_readonly("bounds", &TailExperiment::bounds)
        .def_readonly("stderrs", &TailExperiment::stderrs)
        .def("to_csv", [](const TailExperiment& e) { return tail_experiment_csv(e); });

    // grid measures
    m.def("from_points",
          [](std::int64_t n, const std::vector<std::int64_t>& pts) {
              return from_points(GridSpec(n), pts);
          },
          py::arg("n"), py::arg("points"));
    m.def("autoconvolve", &autoconvolve, py::arg("measure"));
    m.def("autoconvolve_fast", &autoconvolve_fast, py::arg("measure"));
    m.def("pair_counts", &pair_counts, py::arg("measure"));
    m.def("fourier_coefficient", &fourier_coefficient, py::arg("measure"), py::arg("r"));
    m.def("max_flatness_deviation",
          [](const AtomVector& v) { return to_fraction(max_flatness_deviation(v)); });
    m.def("max_flatness_deviation_nonzero",
          [](const AtomVector& v) { return to_fraction(max_flatness_deviation_nonzero(v)); });

    // construction
    m.def("sample_points",
          [](std::int64_t n, std::int64_t N, std::uint64_t seed) {
              Rng stream(seed);
              return sample_points(GridSpec(n), N, stream);
          },
          py::arg("n"), py::arg("N"), py::arg("seed"));
    m.def("choose_M", &choose_M, py::arg("gamma"), py::arg("epsilon"));
    m.def("multiplicity_max", &multiplicity_max, py::arg("measure"));
    m.def("pair_count_for", &pair_count_for, py::arg("gamma"), py::arg("n"));
    m.def("check_trial",
          [](const SymmetricCounts& measure, double gamma, double epsilon,
             const std::string& phi, std::uint64_t seed) {
              return check_trial(measure, make_params(gamma, epsilon, phi, seed, 1));
          },
          py::arg("measure"), py::arg("gamma") = 0.6, py::arg("epsilon") = 1.0,
          py::arg("phi") = "log", py::arg("seed") = 0);
    m.def("construct",
          [](std::int64_t n, double gamma, double epsilon, const std::string& phi,
             std::uint64_t seed, int max_attempts) {
              return construct(make_params(gamma, epsilon, phi, seed, max_attempts), n);
          },
          py::arg("n"), py::arg("gamma") = 0.6, py::arg("epsilon") = 1.0, py::arg("phi") = "log",
          py::arg("seed") = 0, py::arg("max_attempts") = 1);
    m.def("derive_seed", &derive_seed, py::arg("seed"), py::arg("index"));

    // densities
    m.def("build_step_density", &build_step_density, py::arg("measure"));
    m.def("autoconvolve_density", &autoconvolve_density, py::arg("step_density"));
    m.def("sup_deviation_from_one", [](const PiecewiseLinearPeriodic& f) {
        return to_fraction(sup_deviation_from_one(f));
    });
    m.def("sup_norm_difference",
          [](const PiecewiseLinearPeriodic& a, const PiecewiseLinearPeriodic& b) {
              return to_fraction(sup_norm_difference(a, b));
          });

    // metrics
    m.def("hausdorff_distance",
          [](const FiniteSymmetricSet& a, const FiniteSymmetricSet& b) {
              return to_fraction(hausdorff_distance(a, b));
          });
    m.def("support_set", &support_set, py::arg("measure"));
    m.def("measure_distance", &measure_distance, py::arg("a"), py::arg("b"));
    m.def("density_distance", &density_distance, py::arg("a"), py::arg("b"));
    m.def("metric_breakdown",
          [](const SymmetricCounts& a, const SymmetricCounts& b) {
              const auto br = metric_breakdown(a, b);
              py::dict out;
              out["hausdorff"] = to_fraction(br.hausdorff);
              out["fourier_sup"] = br.fourier_sup;
              out["density_sup"] = to_fraction(br.density_sup);
              out["measure_distance"] = br.measure_distance;
              out["density_distance"] = br.density_distance;
              return out;
          });
    m.def("covering_check",
          [](const FiniteSymmetricSet& E, double alpha, int m_index, const py::handle& width) {
              return covering_check(E, alpha, m_index, rational_from_object(width));
          },
          py::arg("E"), py::arg("alpha"), py::arg("m_index"), py::arg("width"));
    m.def("box_dimension_estimate", &box_dimension_estimate, py::arg("E"), py::arg("n"));

    // concentration
    m.def("binomial_tail_bound", &binomial_tail_bound, py::arg("N"), py::arg("p"), py::arg("m"));
    m.def("azuma_bound", &azuma_bound, py::arg("A"), py::arg("x"));
    m.def("azuma_variance_proxy", &azuma_variance_proxy, py::arg("n"), py::arg("N"), py::arg("M"));
    m.def("expected_quarter_pair_count",
          [](std::int64_t n, std::int64_t N, std::int64_t r) {
              return to_fraction(expected_quarter_pair_count(n, N, r));
          });
    m.def("increment_sequence", &increment_sequence, py::arg("n"), py::arg("samples"),
          py::arg("r"), py::arg("M"));
    m.def("telescoping_identity_check", &telescoping_identity_check, py::arg("n"),
          py::arg("samples"), py::arg("r"), py::arg("M"));
    m.def("deviation_tail_experiment", &deviation_tail_experiment, py::arg("n"), py::arg("N"),
          py::arg("M"), py::arg("trials"), py::arg("seed"), py::arg("grid_points") = 17);
    m.def("default_tail_cap", &default_tail_cap, py::arg("n"), py::arg("N"));

#ifdef FLATCONV_VERSION
    m.attr("__version__") = FLATCONV_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
