#include "revfield/run.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "revfield/units.hpp"

namespace revfield {

namespace {

// One synthesis route per mode; the limit-case formulas are used verbatim so
// fig2-style scenarios exercise them end to end.
std::function<FieldSample(double)> make_field_fn(const Scenario& s) {
  switch (s.mode) {
    case SynthesisMode::constant_phase: {
      double phi0 = s.phase(s.t0).value;
      return [sys = s.system, p = s.population, phi0](double t) {
        return field_constant_phase(sys, p, phi0, t);
      };
    }
    case SynthesisMode::constant_population: {
      const auto* c = std::get_if<pop::Constant>(&s.population.family());
      if (!c)
        throw ScenarioError(
            "synthesis_mode: constant_population requires population kind "
            "'constant'");
      return [sys = s.system, p0 = c->p0, phi = s.phase](double t) {
        return field_constant_population(sys, p0, phi, t);
      };
    }
    case SynthesisMode::general:
    default:
      return [sys = s.system, p = s.population, phi = s.phase](double t) {
        return field_at(sys, p, phi, t);
      };
  }
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

std::string format_report(const ValidationReport& r) {
  std::ostringstream os;
  os << "validation reported " << r.violations.size() << " violation(s):";
  for (const Violation& v : r.violations)
    os << "\n  [" << to_string(v.constraint) << "] " << v.message;
  return os.str();
}

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

RunResult run(const Scenario& s, const RunOptions& opts) {
  if (opts.output_samples < 2)
    throw std::invalid_argument("run: output_samples must be at least 2");

  RunResult result;

  // Validation grid: at least ten samples per carrier period and no coarser
  // than the output grid.
  double periods =
      (s.tf - s.t0) * s.system.omega0 / (2.0 * std::numbers::pi);
  int n_val = std::max(opts.output_samples - 1,
                       static_cast<int>(std::ceil(10.0 * periods)) + 1);
  result.validation = validate(s.system, s.population, s.phase,
                               TimeGrid(s.t0, s.tf, n_val));
  if (!result.validation.ok() && !opts.override_validation)
    throw ValidationRefused(format_report(result.validation),
                            result.validation);

  auto field_fn = make_field_fn(s);

  const int n_out = opts.output_samples;
  const int intervals = n_out - 1;
  result.output_times.resize(n_out);
  result.target_population.resize(n_out);
  result.target_phase.resize(n_out);
  result.field.reserve(n_out);
  for (int j = 0; j < n_out; ++j) {
    double t = j == 0 ? s.t0
                      : (j == intervals
                             ? s.tf
                             : s.t0 + (s.tf - s.t0) * (double(j) / intervals));
    result.output_times[j] = t;
    result.target_population[j] = s.population(t).value;
    result.target_phase[j] = s.phase(t).value;
    result.field.push_back(field_fn(t));
  }

  QuantumState s0 =
      init_state(s.population(s.t0).value, s.phase(s.t0).value);

  if (s.simulate_rwa) {
    // Integrator steps are a multiple of the output intervals so every
    // output time is an exact sample.
    int k = ceil_div(std::max(s.rwa_steps, 200), intervals);
    TimeGrid grid(s.t0, s.tf, intervals * k);
    auto envelope = [field_fn](double t) { return rwa_envelope(field_fn(t)); };
    result.series_rwa =
        integrate(s.system, FieldSource{RwaDrive{envelope}}, s0, grid);
    result.rwa_stride = static_cast<std::size_t>(k);
  }

  if (s.simulate_full) {
    double h_max = s.system.carrier_period() / s.steps_per_period;
    int k = std::max(
        1, static_cast<int>(std::ceil((s.tf - s.t0) / intervals / h_max)));
    TimeGrid grid(s.t0, s.tf, intervals * k);
    auto field = [field_fn](double t) { return field_fn(t).epsilon; };
    result.series_full =
        integrate(s.system, FieldSource{FullDrive{field}}, s0, grid);
    result.full_stride = static_cast<std::size_t>(k);
  }

  if (result.series_rwa || result.series_full)
    result.summary = summarize(result);
  return result;
}

SummaryMetrics summarize(const RunResult& r) {
  const TimeSeries* series = nullptr;
  std::size_t stride = 0;
  if (r.series_full) {
    series = &*r.series_full;
    stride = r.full_stride;
  } else if (r.series_rwa) {
    series = &*r.series_rwa;
    stride = r.rwa_stride;
  } else {
    throw std::invalid_argument("summarize: no simulation series present");
  }

  SummaryMetrics m{};
  m.final_pop_error = std::abs(series->populations_g.back() -
                               r.target_population.back());
  m.final_phase_error =
      std::abs(series->relative_phase.back() - r.target_phase.back());

  for (std::size_t j = 0; j < r.output_times.size(); ++j) {
    double dev = std::abs(series->populations_g[j * stride] -
                          r.target_population[j]);
    m.max_pop_deviation = std::max(m.max_pop_deviation, dev);
  }

  for (const TimeSeries* ts : {r.series_rwa ? &*r.series_rwa : nullptr,
                               r.series_full ? &*r.series_full : nullptr}) {
    if (!ts) continue;
    for (double nr : ts->norm_residual)
      m.max_norm_residual = std::max(m.max_norm_residual, nr);
  }

  double peak_env = 0.0, peak_det = 0.0;
  for (const FieldSample& f : r.field) {
    peak_env = std::max(peak_env, std::abs(f.envelope));
    if (std::abs(f.detuning) > std::abs(peak_det)) peak_det = f.detuning;
  }
  m.peak_field_V_per_m = units::field_au_to_vm(peak_env);
  m.peak_detuning_meV = units::hartree_to_mev(peak_det);
  return m;
}

std::size_t emit_csv(const RunResult& r, std::ostream& out) {
  out << "t_fs,P_target,Phi_target_rad,field_au,field_V_per_m,"
         "envelope_V_per_m,detuning_meV,P_rwa,phi_rwa_rad,P_full,"
         "phi_full_rad,norm_residual\n";

  const TimeSeries* norm_src = r.series_full  ? &*r.series_full
                               : r.series_rwa ? &*r.series_rwa
                                              : nullptr;
  std::size_t norm_stride = r.series_full ? r.full_stride : r.rwa_stride;

  for (std::size_t j = 0; j < r.output_times.size(); ++j) {
    const FieldSample& f = r.field[j];
    out << shortest(units::au_to_fs(r.output_times[j])) << ','
        << shortest(r.target_population[j]) << ','
        << shortest(r.target_phase[j]) << ',' << shortest(f.epsilon) << ','
        << shortest(units::field_au_to_vm(f.epsilon)) << ','
        << shortest(units::field_au_to_vm(f.envelope)) << ','
        << shortest(units::hartree_to_mev(f.detuning)) << ',';
    if (r.series_rwa) {
      std::size_t k = j * r.rwa_stride;
      out << shortest(r.series_rwa->populations_g[k]) << ','
          << shortest(r.series_rwa->relative_phase[k]) << ',';
    } else {
      out << ",,";
    }
    if (r.series_full) {
      std::size_t k = j * r.full_stride;
      out << shortest(r.series_full->populations_g[k]) << ','
          << shortest(r.series_full->relative_phase[k]) << ',';
    } else {
      out << ",,";
    }
    if (norm_src)
      out << shortest(norm_src->norm_residual[j * norm_stride]);
    out << '\n';
  }
  return r.output_times.size();
}

}  // namespace revfield
