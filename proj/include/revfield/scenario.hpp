#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "revfield/system.hpp"
#include "revfield/trajectory.hpp"

namespace revfield {

enum class SynthesisMode { general, constant_phase, constant_population };

/// Fully-resolved experiment description: all quantities already in atomic
/// units, trajectories constructed. Built from a JSON document
/// (load_scenario) or from a named preset.
struct Scenario {
  SystemParams system;
  double t0;  // a.u.
  double tf;  // a.u.
  int steps_per_period;  // full-mode sampling density per carrier period
  int rwa_steps;         // minimum RWA step count
  PopulationTrajectory population;
  PhaseTrajectory phase;
  bool simulate_rwa;
  bool simulate_full;
  SynthesisMode mode;
};

inline constexpr int default_steps_per_period = 400;
inline constexpr int default_rwa_steps = 2000;

/// Raised by load_scenario on any schema problem; the message names the
/// offending JSON path. Unknown keys are errors.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses and resolves a JSON scenario document. Schema (defaults in
/// brackets):
///   system:  { omega0_eV, mu_au }
///   time:    { t0_fs [0], tf_fs, steps_per_period [400], rwa_steps [2000] }
///   population: { kind: constant|linear|quadratic_half|tanh|sech, ... }
///   phase:      { kind: constant|linear|quadratic_vertex|sech_pair|tanh, ... }
///   simulate: { rwa [true], full [true] }
///   synthesis_mode: "general" | "constant_phase" | "constant_population"
Scenario load_scenario(std::string_view json_text);

/// The five published scenarios, keyed fig2..fig6. Throws ScenarioError for
/// any other name.
Scenario preset(std::string_view name);

/// Serializes a Scenario back to its JSON document form (fs/eV units).
std::string scenario_to_json(const Scenario& s);

}  // namespace revfield
