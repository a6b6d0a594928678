#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "revfield/dynamics.hpp"
#include "revfield/scenario.hpp"
#include "revfield/synthesis.hpp"
#include "revfield/validation.hpp"

namespace revfield {

struct SummaryMetrics {
  double final_pop_error;      // |P_sim(tf) - P(tf)|
  double final_phase_error;    // |phi_sim(tf) - Phi(tf)|, unwrapped record
  double max_pop_deviation;    // max_t |P_sim(t) - P(t)|
  double max_norm_residual;    // over every integrator step, both modes
  double peak_field_V_per_m;   // max |V0| on the output grid
  double peak_detuning_meV;    // detuning of largest magnitude, signed
};

struct RunResult {
  std::vector<double> output_times;  // a.u.
  std::vector<double> target_population;
  std::vector<double> target_phase;
  std::vector<FieldSample> field;

  // Full-resolution integrator series; every output time is an exact series
  // sample at the given stride.
  std::optional<TimeSeries> series_rwa;
  std::optional<TimeSeries> series_full;
  std::size_t rwa_stride = 0;
  std::size_t full_stride = 0;

  ValidationReport validation;
  std::optional<SummaryMetrics> summary;  // present when a simulation ran
};

struct RunOptions {
  bool override_validation = false;
  int output_samples = 2000;
};

/// Raised by run() when validation reports violations and the override flag
/// is not set.
class ValidationRefused : public std::runtime_error {
 public:
  ValidationRefused(std::string msg, ValidationReport r)
      : std::runtime_error(std::move(msg)), report(std::move(r)) {}
  ValidationReport report;
};

/// Executes the pipeline: validate -> synthesize -> simulate -> summarize.
/// Deterministic for a given scenario.
RunResult run(const Scenario& s, const RunOptions& opts = {});

/// Recomputes the summary from the stored series (summary fields prefer the
/// full simulation when both ran). Throws std::invalid_argument when no
/// simulation is present.
SummaryMetrics summarize(const RunResult& r);

/// Writes the CSV document; returns the number of data rows
/// (= output_times.size()). Columns, in order:
///   t_fs, P_target, Phi_target_rad, field_au, field_V_per_m,
///   envelope_V_per_m, detuning_meV, P_rwa, phi_rwa_rad, P_full,
///   phi_full_rad, norm_residual
/// Numbers are emitted in shortest round-trip decimal form; columns of
/// absent simulations stay empty. Same RunResult -> byte-identical output.
std::size_t emit_csv(const RunResult& r, std::ostream& out);

}  // namespace revfield
