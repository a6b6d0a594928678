#include <fstream>
#include <numbers>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "revfield/run.hpp"
#include "revfield/scenario.hpp"
#include "revfield/units.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_validation = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_report(const revfield::ValidationReport& report) {
  if (report.ok()) {
    std::cout << "validation passed (no violations)\n";
    return;
  }
  std::cout << "validation reported " << report.violations.size()
            << " violation(s):\n";
  for (const auto& v : report.violations)
    std::cout << "  [" << revfield::to_string(v.constraint) << "] "
              << v.message << "\n";
}

void print_summary(const revfield::RunResult& result) {
  using revfield::units::au_to_fs;
  print_report(result.validation);
  std::cout << "output grid: " << result.output_times.size() << " samples, "
            << au_to_fs(result.output_times.front()) << " .. "
            << au_to_fs(result.output_times.back()) << " fs\n";
  if (!result.summary) return;
  const auto& m = *result.summary;
  std::cout << "peak envelope      : " << m.peak_field_V_per_m << " V/m\n"
            << "peak detuning      : " << m.peak_detuning_meV << " meV\n"
            << "final |dP|         : " << m.final_pop_error << "\n"
            << "final |dphi|       : " << m.final_phase_error << " rad\n"
            << "max |dP| over run  : " << m.max_pop_deviation << "\n"
            << "max norm residual  : " << m.max_norm_residual << "\n";
}

int write_csv(const revfield::RunResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write to " << path << "\n";
    return exit_error;
  }
  std::size_t rows = revfield::emit_csv(result, out);
  out.flush();
  if (!out) {
    std::cerr << "error: write failed for " << path << "\n";
    return exit_error;
  }
  std::cout << "wrote " << rows << " rows to " << path << "\n";
  return exit_ok;
}

void warn_near_half(const revfield::Scenario& s) {
  if (s.mode != revfield::SynthesisMode::constant_population) return;
  const auto* c = std::get_if<revfield::pop::Constant>(&s.population.family());
  if (c && revfield::near_half_population_warning(c->p0))
    std::cerr << "warning: fixed population " << c->p0
              << " is close to 1/2; the synthesized field grows with "
                 "1/(1-2P)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "revfield: reverse-engineered control fields for two-level systems"};
  app.require_subcommand(1);

  bool override_validation = false;
  app.add_flag("--override-validation", override_validation,
               "run even when the trajectory validator reports violations");

  std::string config_path, out_path, preset_name;

  CLI::App* cmd_validate =
      app.add_subcommand("validate", "check a scenario against the "
                                     "trajectory constraints");
  cmd_validate->add_option("config", config_path, "scenario JSON file")
      ->required();

  CLI::App* cmd_synth = app.add_subcommand(
      "synthesize", "sample the synthesized field to CSV (no simulation)");
  cmd_synth->add_option("config", config_path, "scenario JSON file")
      ->required();
  cmd_synth->add_option("--out", out_path, "output CSV path")->required();

  bool flag_rwa = false, flag_full = false;
  CLI::App* cmd_sim = app.add_subcommand(
      "simulate", "synthesize the field and integrate the dynamics");
  cmd_sim->add_option("config", config_path, "scenario JSON file")->required();
  cmd_sim->add_flag("--rwa", flag_rwa, "integrate the RWA equations");
  cmd_sim->add_flag("--full", flag_full, "integrate without the RWA");
  cmd_sim->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* cmd_preset = app.add_subcommand(
      "preset", "run one of the published scenarios (fig2..fig6)");
  cmd_preset->add_option("name", preset_name, "preset name")->required();
  cmd_preset->add_option("--out", out_path, "output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    revfield::RunOptions opts;
    opts.override_validation = override_validation;

    if (cmd_validate->parsed()) {
      revfield::Scenario s = revfield::load_scenario(read_file(config_path));
      double periods = (s.tf - s.t0) * s.system.omega0 / (2.0 * std::numbers::pi);
      int n_val = std::max(1999, static_cast<int>(periods * 10.0) + 1);
      auto report = revfield::validate(s.system, s.population, s.phase,
                                       revfield::TimeGrid(s.t0, s.tf, n_val));
      print_report(report);
      return report.ok() ? exit_ok : exit_validation;
    }

    if (cmd_synth->parsed()) {
      revfield::Scenario s = revfield::load_scenario(read_file(config_path));
      s.simulate_rwa = s.simulate_full = false;
      warn_near_half(s);
      revfield::RunResult result = revfield::run(s, opts);
      print_summary(result);
      return write_csv(result, out_path);
    }

    if (cmd_sim->parsed()) {
      revfield::Scenario s = revfield::load_scenario(read_file(config_path));
      if (flag_rwa || flag_full) {
        s.simulate_rwa = flag_rwa;
        s.simulate_full = flag_full;
      }
      warn_near_half(s);
      revfield::RunResult result = revfield::run(s, opts);
      print_summary(result);
      return write_csv(result, out_path);
    }

    if (cmd_preset->parsed()) {
      revfield::Scenario s = revfield::preset(preset_name);
      warn_near_half(s);
      revfield::RunResult result = revfield::run(s, opts);
      print_summary(result);
      if (!out_path.empty()) return write_csv(result, out_path);
      return exit_ok;
    }
  } catch (const revfield::ValidationRefused& e) {
    std::cerr << "refused: " << e.what() << "\n"
              << "(use --override-validation to run anyway)\n";
    return exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}
