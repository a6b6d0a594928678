#include "revfield/validation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "revfield/synthesis.hpp"
#include "revfield/units.hpp"

namespace revfield {

ValidationTolerances::ValidationTolerances()
    : tol_rate(units::per_fs_to_au(1e-6)),
      tol_phase_rate(units::per_fs_to_au(1e-3)) {}

const char* to_string(Violation::Constraint c) {
  switch (c) {
    case Violation::Constraint::C1: return "C1";
    case Violation::Constraint::C2: return "C2";
    case Violation::Constraint::C3: return "C3";
    case Violation::Constraint::C4: return "C4";
    case Violation::Constraint::CPhaseRel: return "CPhaseRel";
  }
  return "?";
}

namespace {

struct WorstPoint {
  double magnitude = 0.0;
  double time = 0.0;
  bool hit = false;

  void offer(double mag, double t) {
    if (!hit || mag > magnitude) {
      magnitude = mag;
      time = t;
      hit = true;
    }
  }
};

std::string at_fs(double t_au) {
  std::ostringstream os;
  os << units::au_to_fs(t_au) << " fs";
  return os.str();
}

}  // namespace

ValidationReport validate(const SystemParams& sys,
                          const PopulationTrajectory& population,
                          const PhaseTrajectory& phase, const TimeGrid& grid,
                          const ValidationTolerances& tols) {
  double periods = (grid.tf - grid.t0) * sys.omega0 / (2.0 * std::numbers::pi);
  int required = static_cast<int>(std::ceil(10.0 * periods));
  if (grid.n_steps < required) {
    std::ostringstream os;
    os << "validate: grid too coarse; need at least " << required
       << " steps (10 per carrier period), got " << grid.n_steps;
    throw std::invalid_argument(os.str());
  }

  WorstPoint c1, c2, c3, c4_rabi, c4_det;
  for (int k = 0; k <= grid.n_steps; ++k) {
    double t = grid.time_at(k);
    TrajectorySample ps = population(t);
    TrajectorySample fs = phase(t);

    double outside = std::max(-ps.value, ps.value - 1.0);
    if (outside > tols.tol_pop) c1.offer(outside, t);

    if (ps.value <= tols.tol_pop || ps.value >= 1.0 - tols.tol_pop) {
      if (std::abs(ps.d1) > tols.tol_rate) c2.offer(std::abs(ps.d1), t);
    }

    if (std::abs(ps.value - 0.5) <= tols.tol_half) {
      if (std::abs(fs.d1) > tols.tol_phase_rate) c3.offer(std::abs(fs.d1), t);
    }

    // RWA headroom; samples the synthesis formulas and skips points they
    // reject (C2/C3 already flag those).
    try {
      FieldSample field = field_at(sys, population, phase, t);
      double rabi = sys.mu * std::abs(field.envelope);
      if (rabi > sys.omega0 / 10.0) c4_rabi.offer(rabi, t);
      if (std::abs(field.detuning) > sys.omega0 / 10.0)
        c4_det.offer(std::abs(field.detuning), t);
    } catch (const SingularityError&) {
    }
  }

  ValidationReport report;
  if (c1.hit)
    report.violations.push_back(
        {Violation::Constraint::C1, c1.time, c1.magnitude,
         "population leaves [0, 1] by " + std::to_string(c1.magnitude) +
             " at " + at_fs(c1.time)});
  if (c2.hit)
    report.violations.push_back(
        {Violation::Constraint::C2, c2.time, c2.magnitude,
         "dP/dt does not vanish where the population reaches an extremum "
         "(worst at " + at_fs(c2.time) + ")"});
  if (c3.hit)
    report.violations.push_back(
        {Violation::Constraint::C3, c3.time, c3.magnitude,
         "dPhi/dt does not vanish where the populations are equal (worst at " +
             at_fs(c3.time) + ")"});
  if (c4_rabi.hit || c4_det.hit) {
    const WorstPoint& w = c4_rabi.hit ? c4_rabi : c4_det;
    std::string what =
        c4_rabi.hit && c4_det.hit
            ? "peak Rabi frequency and detuning exceed omega0/10"
            : (c4_rabi.hit ? "peak Rabi frequency mu|V0| exceeds omega0/10"
                           : "peak |detuning| exceeds omega0/10");
    report.violations.push_back({Violation::Constraint::C4, w.time,
                                 w.magnitude,
                                 what + " (worst at " + at_fs(w.time) + ")"});
  }
  return report;
}

}  // namespace revfield
