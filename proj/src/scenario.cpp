#include "revfield/scenario.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include <json.hpp>

#include "revfield/units.hpp"

namespace revfield {

namespace {

using nlohmann::json;
using units::fs_to_au;
using units::per_fs_to_au;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ScenarioError(path + ": " + what);
}

const json& member(const json& obj, const std::string& path,
                   const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown key");
  }
}

double num(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double num_or(const json& obj, const std::string& path, const char* key,
              double fallback) {
  if (!obj.contains(key)) return fallback;
  return num(obj, path, key);
}

int integer_or(const json& obj, const std::string& path, const char* key,
               int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

bool flag_or(const json& obj, const std::string& path, const char* key,
             bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

std::string kind_of(const json& obj, const std::string& path) {
  const json& v = member(obj, path, "kind");
  if (!v.is_string()) fail(path + ".kind", "expected a string");
  return v.get<std::string>();
}

PopulationTrajectory parse_population(const json& obj, double t0, double tf) {
  const std::string path = "population";
  std::string kind = kind_of(obj, path);
  try {
    if (kind == "constant") {
      check_keys(obj, path, {"kind", "P0"});
      return PopulationTrajectory::constant(num(obj, path, "P0"));
    }
    if (kind == "linear") {
      check_keys(obj, path, {"kind", "P_i", "P_f"});
      return PopulationTrajectory::linear(num(obj, path, "P_i"),
                                          num(obj, path, "P_f"), t0, tf);
    }
    if (kind == "quadratic_half") {
      check_keys(obj, path, {"kind", "P_i", "P_f", "t_half_fs"});
      return PopulationTrajectory::quadratic_through_half(
          num(obj, path, "P_i"), num(obj, path, "P_f"),
          fs_to_au(num(obj, path, "t_half_fs")), t0, tf);
    }
    if (kind == "tanh") {
      check_keys(obj, path, {"kind", "P_i", "P_f", "alpha_per_fs", "t_half_fs"});
      return PopulationTrajectory::tanh(
          num(obj, path, "P_i"), num(obj, path, "P_f"),
          per_fs_to_au(num(obj, path, "alpha_per_fs")),
          fs_to_au(num(obj, path, "t_half_fs")));
    }
    if (kind == "sech") {
      check_keys(obj, path, {"kind", "P_ends", "P_max", "xi_per_fs", "t_peak_fs"});
      return PopulationTrajectory::sech(
          num(obj, path, "P_ends"), num(obj, path, "P_max"),
          per_fs_to_au(num(obj, path, "xi_per_fs")),
          fs_to_au(num(obj, path, "t_peak_fs")));
    }
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown population kind '" + kind + "'");
}

PhaseTrajectory parse_phase(const json& obj, double t0, double tf) {
  const std::string path = "phase";
  std::string kind = kind_of(obj, path);
  try {
    if (kind == "constant") {
      check_keys(obj, path, {"kind", "Phi0_rad"});
      return PhaseTrajectory::constant(num(obj, path, "Phi0_rad"));
    }
    if (kind == "linear") {
      check_keys(obj, path, {"kind", "Phi_i_rad", "Phi_f_rad"});
      return PhaseTrajectory::linear(num(obj, path, "Phi_i_rad"),
                                     num(obj, path, "Phi_f_rad"), t0, tf);
    }
    if (kind == "quadratic_vertex") {
      check_keys(obj, path, {"kind", "Phi_i_rad", "Phi_f_rad", "t_vertex_fs"});
      return PhaseTrajectory::quadratic_vertex(
          num(obj, path, "Phi_i_rad"), num(obj, path, "Phi_f_rad"),
          fs_to_au(num(obj, path, "t_vertex_fs")), t0, tf);
    }
    if (kind == "sech_pair") {
      check_keys(obj, path, {"kind", "Phi_i_rad", "Phi_f_rad", "Phi_max_rad",
                             "eta1_per_fs", "t_join_fs"});
      return PhaseTrajectory::sech_pair(
          num(obj, path, "Phi_i_rad"), num(obj, path, "Phi_f_rad"),
          num(obj, path, "Phi_max_rad"),
          per_fs_to_au(num(obj, path, "eta1_per_fs")),
          fs_to_au(num(obj, path, "t_join_fs")), t0, tf);
    }
    if (kind == "tanh") {
      check_keys(obj, path,
                 {"kind", "Phi_i_rad", "Phi_f_rad", "chi_per_fs", "t_star_fs"});
      return PhaseTrajectory::tanh(num(obj, path, "Phi_i_rad"),
                                   num(obj, path, "Phi_f_rad"),
                                   per_fs_to_au(num(obj, path, "chi_per_fs")),
                                   fs_to_au(num(obj, path, "t_star_fs")));
    }
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown phase kind '" + kind + "'");
}

void check_mode_consistency(const Scenario& s) {
  if (s.mode == SynthesisMode::constant_population) {
    const auto* c = std::get_if<pop::Constant>(&s.population.family());
    if (!c)
      throw ScenarioError(
          "synthesis_mode: constant_population requires population kind "
          "'constant'");
    if (std::abs(1.0 - 2.0 * c->p0) < 1e-6)
      throw ScenarioError(
          "synthesis_mode: constant_population requires P0 != 1/2");
  }
  if (s.mode == SynthesisMode::constant_phase &&
      s.phase.kind() != PhaseTrajectory::Kind::constant)
    throw ScenarioError(
        "synthesis_mode: constant_phase requires phase kind 'constant'");
}

}  // namespace

Scenario load_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(doc, "config",
             {"system", "time", "population", "phase", "simulate",
              "synthesis_mode"});

  const json& jsys = member(doc, "config", "system");
  check_keys(jsys, "system", {"omega0_eV", "mu_au"});
  SystemParams sys;
  try {
    sys = make_system(num(jsys, "system", "omega0_eV"),
                      num(jsys, "system", "mu_au"));
  } catch (const std::invalid_argument& e) {
    fail("system", e.what());
  }

  const json& jtime = member(doc, "config", "time");
  check_keys(jtime, "time",
             {"t0_fs", "tf_fs", "steps_per_period", "rwa_steps"});
  double t0 = fs_to_au(num_or(jtime, "time", "t0_fs", 0.0));
  double tf = fs_to_au(num(jtime, "time", "tf_fs"));
  if (!(tf > t0)) fail("time.tf_fs", "must exceed t0_fs");
  int spp = integer_or(jtime, "time", "steps_per_period",
                       default_steps_per_period);
  if (spp < 50) fail("time.steps_per_period", "must be at least 50");
  int rwa_steps = integer_or(jtime, "time", "rwa_steps", default_rwa_steps);
  if (rwa_steps < 200) fail("time.rwa_steps", "must be at least 200");

  PopulationTrajectory population =
      parse_population(member(doc, "config", "population"), t0, tf);
  PhaseTrajectory phase = parse_phase(member(doc, "config", "phase"), t0, tf);

  bool sim_rwa = true, sim_full = true;
  if (doc.contains("simulate")) {
    const json& jsim = doc.at("simulate");
    check_keys(jsim, "simulate", {"rwa", "full"});
    sim_rwa = flag_or(jsim, "simulate", "rwa", true);
    sim_full = flag_or(jsim, "simulate", "full", true);
  }

  SynthesisMode mode = SynthesisMode::general;
  if (doc.contains("synthesis_mode")) {
    const json& jm = doc.at("synthesis_mode");
    if (!jm.is_string()) fail("synthesis_mode", "expected a string");
    std::string m = jm.get<std::string>();
    if (m == "general")
      mode = SynthesisMode::general;
    else if (m == "constant_phase")
      mode = SynthesisMode::constant_phase;
    else if (m == "constant_population")
      mode = SynthesisMode::constant_population;
    else
      fail("synthesis_mode", "unknown mode '" + m + "'");
  }

  Scenario s{sys,   t0,       tf,       spp,  rwa_steps,
             population, phase, sim_rwa, sim_full, mode};
  check_mode_consistency(s);
  return s;
}

Scenario preset(std::string_view name) {
  constexpr double pi = std::numbers::pi;
  SystemParams sodium = make_system(2.1, 2.479);
  double t0 = 0.0;
  double tf100 = fs_to_au(100.0), tf200 = fs_to_au(200.0);

  if (name == "fig2") {
    return Scenario{sodium,
                    t0,
                    tf100,
                    default_steps_per_period,
                    default_rwa_steps,
                    PopulationTrajectory::constant(0.3),
                    PhaseTrajectory::linear(0.0, pi / 4.0, t0, tf100),
                    true,
                    true,
                    SynthesisMode::constant_population};
  }
  if (name == "fig3") {
    return Scenario{sodium,
                    t0,
                    tf100,
                    default_steps_per_period,
                    default_rwa_steps,
                    PopulationTrajectory::linear(0.8, 0.3, t0, tf100),
                    PhaseTrajectory::quadratic_vertex(0.0, pi / 4.0,
                                                      fs_to_au(60.0), t0,
                                                      tf100),
                    true,
                    true,
                    SynthesisMode::general};
  }
  if (name == "fig4") {
    return Scenario{sodium,
                    t0,
                    tf100,
                    default_steps_per_period,
                    default_rwa_steps,
                    PopulationTrajectory::tanh(0.1, 1.0, per_fs_to_au(0.068),
                                               fs_to_au(60.0)),
                    PhaseTrajectory::quadratic_vertex(0.0, pi / 2.0,
                                                      fs_to_au(60.0), t0,
                                                      tf100),
                    true,
                    true,
                    SynthesisMode::general};
  }
  if (name == "fig5") {
    return Scenario{
        sodium,
        t0,
        tf200,
        default_steps_per_period,
        default_rwa_steps,
        PopulationTrajectory::tanh(0.99, 0.01, per_fs_to_au(0.04),
                                   fs_to_au(100.0)),
        PhaseTrajectory::sech_pair(0.0, pi / 4.0, 1.4 * pi / 4.0,
                                   per_fs_to_au(1.65 * 0.04), fs_to_au(100.0),
                                   t0, tf200),
        true,
        true,
        SynthesisMode::general};
  }
  if (name == "fig6") {
    return Scenario{sodium,
                    t0,
                    tf200,
                    default_steps_per_period,
                    default_rwa_steps,
                    PopulationTrajectory::sech(0.5, 0.7, per_fs_to_au(0.08),
                                               fs_to_au(100.0)),
                    PhaseTrajectory::tanh(0.0, pi / 8.0, per_fs_to_au(0.08),
                                          fs_to_au(100.0)),
                    true,
                    true,
                    SynthesisMode::general};
  }
  throw ScenarioError("unknown preset '" + std::string(name) +
                      "' (expected fig2..fig6)");
}

std::string scenario_to_json(const Scenario& s) {
  using units::au_rate_to_per_fs;
  using units::au_to_fs;
  json doc;
  doc["system"] = {{"omega0_eV", units::hartree_to_ev(s.system.omega0)},
                   {"mu_au", s.system.mu}};
  doc["time"] = {{"t0_fs", au_to_fs(s.t0)},
                 {"tf_fs", au_to_fs(s.tf)},
                 {"steps_per_period", s.steps_per_period},
                 {"rwa_steps", s.rwa_steps}};

  std::visit(
      [&doc](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        json& j = doc["population"];
        if constexpr (std::is_same_v<F, pop::Constant>) {
          j = {{"kind", "constant"}, {"P0", f.p0}};
        } else if constexpr (std::is_same_v<F, pop::Linear>) {
          j = {{"kind", "linear"}, {"P_i", f.p_initial}, {"P_f", f.p_final}};
        } else if constexpr (std::is_same_v<F, pop::QuadraticThroughHalf>) {
          j = {{"kind", "quadratic_half"},
               {"P_i", f.p_initial},
               {"P_f", f.p_final},
               {"t_half_fs", au_to_fs(f.t_half)}};
        } else if constexpr (std::is_same_v<F, pop::Tanh>) {
          j = {{"kind", "tanh"},
               {"P_i", f.p_initial},
               {"P_f", f.p_final},
               {"alpha_per_fs", au_rate_to_per_fs(f.alpha)},
               {"t_half_fs", au_to_fs(f.t_half)}};
        } else {
          j = {{"kind", "sech"},
               {"P_ends", f.p_ends},
               {"P_max", f.p_max},
               {"xi_per_fs", au_rate_to_per_fs(f.xi)},
               {"t_peak_fs", au_to_fs(f.t_peak)}};
        }
      },
      s.population.family());

  std::visit(
      [&doc](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        json& j = doc["phase"];
        if constexpr (std::is_same_v<F, phase::Constant>) {
          j = {{"kind", "constant"}, {"Phi0_rad", f.phi0}};
        } else if constexpr (std::is_same_v<F, phase::Linear>) {
          j = {{"kind", "linear"},
               {"Phi_i_rad", f.phi_initial},
               {"Phi_f_rad", f.phi_final}};
        } else if constexpr (std::is_same_v<F, phase::QuadraticVertex>) {
          j = {{"kind", "quadratic_vertex"},
               {"Phi_i_rad", f.phi_initial},
               {"Phi_f_rad", f.phi_final},
               {"t_vertex_fs", au_to_fs(f.t_vertex)}};
        } else if constexpr (std::is_same_v<F, phase::SechPair>) {
          j = {{"kind", "sech_pair"},
               {"Phi_i_rad", f.phi_initial},
               {"Phi_f_rad", f.phi_final},
               {"Phi_max_rad", f.phi_max},
               {"eta1_per_fs", au_rate_to_per_fs(f.eta1)},
               {"t_join_fs", au_to_fs(f.t_join)}};
        } else {
          j = {{"kind", "tanh"},
               {"Phi_i_rad", f.phi_initial},
               {"Phi_f_rad", f.phi_final},
               {"chi_per_fs", au_rate_to_per_fs(f.chi)},
               {"t_star_fs", au_to_fs(f.t_star)}};
        }
      },
      s.phase.family());

  doc["simulate"] = {{"rwa", s.simulate_rwa}, {"full", s.simulate_full}};
  doc["synthesis_mode"] = s.mode == SynthesisMode::general
                              ? "general"
                              : (s.mode == SynthesisMode::constant_phase
                                     ? "constant_phase"
                                     : "constant_population");
  return doc.dump(2);
}

}  // namespace revfield
