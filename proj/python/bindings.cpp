#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "revfield/dynamics.hpp"
#include "revfield/run.hpp"
#include "revfield/scenario.hpp"
#include "revfield/synthesis.hpp"
#include "revfield/trajectory.hpp"
#include "revfield/units.hpp"
#include "revfield/validation.hpp"

namespace py = pybind11;
using namespace revfield;

PYBIND11_MODULE(_revfield, m) {
  m.doc() = "Reverse-engineered control fields for two-level systems";

  py::register_exception<SingularityError>(m, "SingularityError");
  py::register_exception<ScenarioError>(m, "ScenarioError");
  py::register_exception<ValidationRefused>(m, "ValidationRefused");

  // ---- units ----
  py::enum_<units::Unit>(m, "Unit")
      .value("ev", units::Unit::ev)
      .value("hartree", units::Unit::hartree)
      .value("mev", units::Unit::mev)
      .value("fs", units::Unit::fs)
      .value("au_time", units::Unit::au_time)
      .value("v_per_m", units::Unit::v_per_m)
      .value("au_field", units::Unit::au_field)
      .value("per_fs", units::Unit::per_fs)
      .value("au_rate", units::Unit::au_rate);
  m.def("convert_unit", &units::convert_unit, py::arg("value"),
        py::arg("from_unit"), py::arg("to_unit"));
  m.attr("EV_PER_HARTREE") = units::ev_per_hartree;
  m.attr("FS_PER_AU_TIME") = units::fs_per_au_time;
  m.attr("VM_PER_AU_FIELD") = units::vm_per_au_field;

  // ---- core types ----
  py::class_<SystemParams>(m, "SystemParams")
      .def_readonly("omega0", &SystemParams::omega0)
      .def_readonly("mu", &SystemParams::mu)
      .def("carrier_period", &SystemParams::carrier_period);
  m.def("make_system", &make_system, py::arg("omega0_eV"), py::arg("mu_au"));

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<double, double, int>(), py::arg("t0"), py::arg("tf"),
           py::arg("n_steps"))
      .def_readonly("t0", &TimeGrid::t0)
      .def_readonly("tf", &TimeGrid::tf)
      .def_readonly("n_steps", &TimeGrid::n_steps)
      .def("dt", &TimeGrid::dt)
      .def("time_at", &TimeGrid::time_at);

  py::class_<TrajectorySample>(m, "TrajectorySample")
      .def_readonly("value", &TrajectorySample::value)
      .def_readonly("d1", &TrajectorySample::d1)
      .def_readonly("d2", &TrajectorySample::d2)
      .def("__repr__", [](const TrajectorySample& s) {
        std::ostringstream os;
        os << "TrajectorySample(value=" << s.value << ", d1=" << s.d1
           << ", d2=" << s.d2 << ")";
        return os.str();
      });

  py::class_<PopulationTrajectory>(m, "PopulationTrajectory")
      .def_static("constant", &PopulationTrajectory::constant, py::arg("p0"))
      .def_static("linear", &PopulationTrajectory::linear, py::arg("p_initial"),
                  py::arg("p_final"), py::arg("t0"), py::arg("tf"))
      .def_static("quadratic_through_half",
                  &PopulationTrajectory::quadratic_through_half,
                  py::arg("p_initial"), py::arg("p_final"), py::arg("t_half"),
                  py::arg("t0"), py::arg("tf"))
      .def_static("tanh", &PopulationTrajectory::tanh, py::arg("p_initial"),
                  py::arg("p_final"), py::arg("alpha"), py::arg("t_half"))
      .def_static("sech", &PopulationTrajectory::sech, py::arg("p_ends"),
                  py::arg("p_max"), py::arg("xi"), py::arg("t_peak"))
      .def("__call__", &PopulationTrajectory::operator());

  py::class_<PhaseTrajectory>(m, "PhaseTrajectory")
      .def_static("constant", &PhaseTrajectory::constant, py::arg("phi0"))
      .def_static("linear", &PhaseTrajectory::linear, py::arg("phi_initial"),
                  py::arg("phi_final"), py::arg("t0"), py::arg("tf"))
      .def_static("quadratic_vertex", &PhaseTrajectory::quadratic_vertex,
                  py::arg("phi_initial"), py::arg("phi_final"),
                  py::arg("t_vertex"), py::arg("t0"), py::arg("tf"))
      .def_static("sech_pair", &PhaseTrajectory::sech_pair,
                  py::arg("phi_initial"), py::arg("phi_final"),
                  py::arg("phi_max"), py::arg("eta1"), py::arg("t_join"),
                  py::arg("t0"), py::arg("tf"))
      .def_static("tanh", &PhaseTrajectory::tanh, py::arg("phi_initial"),
                  py::arg("phi_final"), py::arg("chi"), py::arg("t_star"))
      .def("__call__", &PhaseTrajectory::operator());

  m.def("find_half_crossings", &find_half_crossings, py::arg("trajectory"),
        py::arg("grid"), py::arg("tol") = 1e-6);

  // ---- validation ----
  py::class_<Violation>(m, "Violation")
      .def_property_readonly(
          "constraint",
          [](const Violation& v) { return std::string(to_string(v.constraint)); })
      .def_readonly("time", &Violation::time)
      .def_readonly("magnitude", &Violation::magnitude)
      .def_readonly("message", &Violation::message);
  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("violations", &ValidationReport::violations)
      .def("ok", &ValidationReport::ok);
  py::class_<ValidationTolerances>(m, "ValidationTolerances")
      .def(py::init<>())
      .def_readwrite("tol_pop", &ValidationTolerances::tol_pop)
      .def_readwrite("tol_half", &ValidationTolerances::tol_half)
      .def_readwrite("tol_rate", &ValidationTolerances::tol_rate)
      .def_readwrite("tol_phase_rate", &ValidationTolerances::tol_phase_rate);
  m.def("validate", &validate, py::arg("system"), py::arg("population"),
        py::arg("phase"), py::arg("grid"),
        py::arg("tolerances") = ValidationTolerances{});

  // ---- synthesis ----
  py::class_<QuadratureComponents>(m, "QuadratureComponents")
      .def_readonly("a", &QuadratureComponents::a)
      .def_readonly("b", &QuadratureComponents::b)
      .def_readonly("theta", &QuadratureComponents::theta);
  py::class_<FieldSample>(m, "FieldSample")
      .def_readonly("epsilon", &FieldSample::epsilon)
      .def_readonly("envelope", &FieldSample::envelope)
      .def_readonly("lambda_", &FieldSample::lambda)
      .def_readonly("total_phase", &FieldSample::total_phase)
      .def_readonly("detuning", &FieldSample::detuning)
      .def_readonly("slow_phase", &FieldSample::slow_phase);
  m.def(
      "quadrature_at",
      [](const TrajectorySample& p, const TrajectorySample& f, double t,
         const SystemParams& sys) { return quadrature_at(p, f, t, sys); },
      py::arg("population_sample"), py::arg("phase_sample"), py::arg("t"),
      py::arg("system"));
  m.def("envelope_and_phase", &envelope_and_phase, py::arg("q"),
        py::arg("pdot_sign_hint"), py::arg("mu"));
  m.def(
      "field_at",
      [](const SystemParams& sys, const PopulationTrajectory& p,
         const PhaseTrajectory& f, double t) { return field_at(sys, p, f, t); },
      py::arg("system"), py::arg("population"), py::arg("phase"), py::arg("t"));
  m.def("field_constant_phase", &field_constant_phase, py::arg("system"),
        py::arg("population"), py::arg("phi0"), py::arg("t"));
  m.def("field_constant_population", &field_constant_population,
        py::arg("system"), py::arg("p0"), py::arg("phase"), py::arg("t"));
  m.def("detuning_at", &detuning_at, py::arg("population"), py::arg("phase"),
        py::arg("t"));
  m.def("rwa_envelope", &rwa_envelope, py::arg("field_sample"));

  // ---- dynamics ----
  py::class_<QuantumState>(m, "QuantumState")
      .def_readonly("cg", &QuantumState::cg)
      .def_readonly("ce", &QuantumState::ce)
      .def("population_g", &QuantumState::population_g)
      .def("norm_sq", &QuantumState::norm_sq);
  m.def("init_state", &init_state, py::arg("p_initial"),
        py::arg("phi_initial"));

  py::class_<TimeSeries>(m, "TimeSeries")
      .def_readonly("times", &TimeSeries::times)
      .def_readonly("states", &TimeSeries::states)
      .def_readonly("populations_g", &TimeSeries::populations_g)
      .def_readonly("relative_phase", &TimeSeries::relative_phase)
      .def_readonly("norm_residual", &TimeSeries::norm_residual)
      .def("__len__", &TimeSeries::size);
  m.def(
      "integrate_rwa",
      [](const SystemParams& sys,
         std::function<std::complex<double>(double)> envelope,
         const QuantumState& s0, const TimeGrid& grid) {
        return integrate(sys, FieldSource{RwaDrive{std::move(envelope)}}, s0,
                         grid);
      },
      py::arg("system"), py::arg("envelope"), py::arg("s0"), py::arg("grid"));
  m.def(
      "integrate_full",
      [](const SystemParams& sys, std::function<double(double)> field,
         const QuantumState& s0, const TimeGrid& grid) {
        return integrate(sys, FieldSource{FullDrive{std::move(field)}}, s0,
                         grid);
      },
      py::arg("system"), py::arg("field"), py::arg("s0"), py::arg("grid"));
  m.def("relative_phase_series", &relative_phase_series, py::arg("series"));
  m.def("phase_relation_residual", &phase_relation_residual,
        py::arg("series"));
  m.def("check_phase_relation", &check_phase_relation, py::arg("series"),
        py::arg("tol"));

  // ---- harness ----
  py::enum_<SynthesisMode>(m, "SynthesisMode")
      .value("general", SynthesisMode::general)
      .value("constant_phase", SynthesisMode::constant_phase)
      .value("constant_population", SynthesisMode::constant_population);
  py::class_<Scenario>(m, "Scenario")
      .def_readonly("system", &Scenario::system)
      .def_readonly("t0", &Scenario::t0)
      .def_readonly("tf", &Scenario::tf)
      .def_readwrite("steps_per_period", &Scenario::steps_per_period)
      .def_readwrite("rwa_steps", &Scenario::rwa_steps)
      .def_readonly("population", &Scenario::population)
      .def_readonly("phase", &Scenario::phase)
      .def_readwrite("simulate_rwa", &Scenario::simulate_rwa)
      .def_readwrite("simulate_full", &Scenario::simulate_full)
      .def_readwrite("mode", &Scenario::mode)
      .def("to_json", &scenario_to_json);
  m.def("load_scenario",
        [](const std::string& text) { return load_scenario(text); },
        py::arg("json_text"));
  m.def("preset", [](const std::string& name) { return preset(name); },
        py::arg("name"));

  py::class_<SummaryMetrics>(m, "SummaryMetrics")
      .def_readonly("final_pop_error", &SummaryMetrics::final_pop_error)
      .def_readonly("final_phase_error", &SummaryMetrics::final_phase_error)
      .def_readonly("max_pop_deviation", &SummaryMetrics::max_pop_deviation)
      .def_readonly("max_norm_residual", &SummaryMetrics::max_norm_residual)
      .def_readonly("peak_field_V_per_m", &SummaryMetrics::peak_field_V_per_m)
      .def_readonly("peak_detuning_meV", &SummaryMetrics::peak_detuning_meV);
  py::class_<RunResult>(m, "RunResult")
      .def_readonly("output_times", &RunResult::output_times)
      .def_readonly("target_population", &RunResult::target_population)
      .def_readonly("target_phase", &RunResult::target_phase)
      .def_readonly("field", &RunResult::field)
      .def_readonly("series_rwa", &RunResult::series_rwa)
      .def_readonly("series_full", &RunResult::series_full)
      .def_readonly("rwa_stride", &RunResult::rwa_stride)
      .def_readonly("full_stride", &RunResult::full_stride)
      .def_readonly("validation", &RunResult::validation)
      .def_readonly("summary", &RunResult::summary);
  m.def(
      "run",
      [](const Scenario& s, bool override_validation, int output_samples) {
        RunOptions opts;
        opts.override_validation = override_validation;
        opts.output_samples = output_samples;
        return run(s, opts);
      },
      py::arg("scenario"), py::arg("override_validation") = false,
      py::arg("output_samples") = 2000);
  m.def("summarize", &summarize, py::arg("result"));
  m.def(
      "emit_csv",
      [](const RunResult& r) {
        std::ostringstream os;
        emit_csv(r, os);
        return os.str();
      },
      py::arg("result"));
}
