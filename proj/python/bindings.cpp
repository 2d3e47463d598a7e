#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tregsim/cohort.hpp"
#include "tregsim/engine.hpp"
#include "tregsim/errors.hpp"
#include "tregsim/stats.hpp"
#include "tregsim/version.hpp"

namespace py = pybind11;
using namespace tregsim;

PYBIND11_MODULE(_tregsim, m) {
    m.doc() = "Regulatory T-cell subset dynamics simulator";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::enum_<CloneSelection>(m, "CloneSelection")
        .value("fixed", CloneSelection::Fixed)
        .value("cycle", CloneSelection::Cycle)
        .value("random", CloneSelection::Random);

    py::class_<ScenarioParameters>(m, "ScenarioParameters")
        .def(py::init<>())
        .def_readwrite("b", &ScenarioParameters::b)
        .def_readwrite("f", &ScenarioParameters::f)
        .def_readwrite("c", &ScenarioParameters::c)
        .def_readwrite("dR", &ScenarioParameters::dR)
        .def_readwrite("dQ", &ScenarioParameters::dQ)
        .def_readwrite("m", &ScenarioParameters::m)
        .def_readwrite("piN", &ScenarioParameters::piN)
        .def_readwrite("q0", &ScenarioParameters::q0)
        .def_readwrite("lambda_q", &ScenarioParameters::lambda_q)
        .def_readwrite("sigma0", &ScenarioParameters::sigma0)
        .def_readwrite("nu", &ScenarioParameters::nu)
        .def_readwrite("inter_response_interval", &ScenarioParameters::inter_response_interval)
        .def_readwrite("expansion_duration", &ScenarioParameters::expansion_duration)
        .def_readwrite("P0", &ScenarioParameters::P0)
        .def_readwrite("R0", &ScenarioParameters::R0)
        .def_readwrite("Q0", &ScenarioParameters::Q0)
        .def_readwrite("n_clones", &ScenarioParameters::n_clones)
        .def_readwrite("clone_selection", &ScenarioParameters::clone_selection)
        .def_readwrite("global_quiescent_decay", &ScenarioParameters::global_quiescent_decay)
        .def_readwrite("horizon_years", &ScenarioParameters::horizon_years)
        .def_readwrite("days_per_year", &ScenarioParameters::days_per_year)
        .def_readwrite("step_days", &ScenarioParameters::step_days)
        .def_readwrite("output_interval_days", &ScenarioParameters::output_interval_days)
        .def("validate", &ScenarioParameters::validate)
        .def("fingerprint", &ScenarioParameters::fingerprint)
        .def("sigma", &ScenarioParameters::sigma, py::arg("t_days"))
        .def("q", &ScenarioParameters::q, py::arg("t_days"));

    py::class_<ResponseRecord>(m, "ResponseRecord")
        .def_readonly("t_days", &ResponseRecord::t_days)
        .def_readonly("clone", &ResponseRecord::clone)
        .def_readonly("primary", &ResponseRecord::primary);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("time_days", &Trajectory::time_days)
        .def_readonly("time_years", &Trajectory::time_years)
        .def_readonly("p_total", &Trajectory::p_total)
        .def_readonly("r_total", &Trajectory::r_total)
        .def_readonly("q_total", &Trajectory::q_total)
        .def_readonly("precursor_prop", &Trajectory::precursor_prop)
        .def_readonly("active_prop", &Trajectory::active_prop)
        .def_readonly("quiescent_prop", &Trajectory::quiescent_prop)
        .def_readonly("phase", &Trajectory::phase)
        .def_readonly("responses", &Trajectory::responses)
        .def_readonly("seed", &Trajectory::seed)
        .def_readonly("parameter_fingerprint", &Trajectory::parameter_fingerprint)
        .def_readonly("clamp_warnings", &Trajectory::clamp_warnings)
        .def("__len__", &Trajectory::size);

    py::class_<InterventionSpec>(m, "InterventionSpec")
        .def(py::init<>())
        .def_readwrite("time_days", &InterventionSpec::time_days)
        .def_readwrite("fraction_p", &InterventionSpec::fraction_p)
        .def_readwrite("fraction_r", &InterventionSpec::fraction_r)
        .def_readwrite("fraction_q", &InterventionSpec::fraction_q);

    py::class_<EnsembleResult>(m, "EnsembleResult")
        .def_readonly("runs", &EnsembleResult::runs)
        .def_readonly("sd_p_total", &EnsembleResult::sd_p_total)
        .def_readonly("sd_r_total", &EnsembleResult::sd_r_total)
        .def_readonly("sd_q_total", &EnsembleResult::sd_q_total)
        .def_readonly("max_sd_p_total", &EnsembleResult::max_sd_p_total)
        .def_readonly("max_sd_r_total", &EnsembleResult::max_sd_r_total)
        .def_readonly("max_sd_q_total", &EnsembleResult::max_sd_q_total);

    m.def("run_simulation", &run_simulation, py::arg("params"), py::arg("seed"),
          py::arg("interventions") = std::vector<InterventionSpec>{});
    m.def("run_ensemble", &run_ensemble, py::arg("params"), py::arg("seeds"));

    py::class_<InversionSummary>(m, "InversionSummary")
        .def_readonly("inversion_time_years", &InversionSummary::inversion_time_years)
        .def_readonly("crossings", &InversionSummary::crossings);
    m.def("find_inversion", &find_inversion, py::arg("trajectory"));

    py::enum_<MwMode>(m, "MwMode")
        .value("auto", MwMode::Auto)
        .value("exact", MwMode::Exact)
        .value("approx", MwMode::Approx);
    py::enum_<MwMethod>(m, "MwMethod")
        .value("exact", MwMethod::Exact)
        .value("normal_approx", MwMethod::NormalApprox);
    py::class_<MannWhitneyResult>(m, "MannWhitneyResult")
        .def_readonly("u_x", &MannWhitneyResult::u_x)
        .def_readonly("u_y", &MannWhitneyResult::u_y)
        .def_readonly("p_two_sided", &MannWhitneyResult::p_two_sided)
        .def_readonly("method", &MannWhitneyResult::method)
        .def_readonly("tie_corrected", &MannWhitneyResult::tie_corrected);

    m.def("median", &median, py::arg("values"));
    m.def("sample_sd", &sample_sd, py::arg("values"));
    m.def("mann_whitney", &mann_whitney, py::arg("x"), py::arg("y"),
          py::arg("mode") = MwMode::Auto);
}
