#pragma once

#include <string>
#include <vector>

#include "revfield/system.hpp"
#include "revfield/trajectory.hpp"

namespace revfield {

/// Numeric thresholds for the trajectory constraints. Stored in atomic
/// units; the defaults correspond to 1e-6 for probabilities, 1e-3 for the
/// half-population band, 1e-6 fs^-1 for population rates and 1e-3 rad/fs
/// for phase rates. The phase-rate default leaves room for vertex-type
/// phases whose rate is still ramping down at the edge of the tol_half
/// band.
struct ValidationTolerances {
  double tol_pop = 1e-6;
  double tol_half = 1e-3;
  double tol_rate;        // a.u.^-1
  double tol_phase_rate;  // rad per a.u. time

  ValidationTolerances();
};

struct Violation {
  enum class Constraint { C1, C2, C3, C4, CPhaseRel };
  Constraint constraint;
  double time;       // a.u.
  double magnitude;  // size of the worst offence
  std::string message;
};

const char* to_string(Violation::Constraint c);

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Scans the trajectory pair on the grid and reports at most one violation
/// per constraint, anchored at the worst offending sample:
///   C1  P(t) within [0, 1] (up to tol_pop),
///   C2  dP/dt ~ 0 wherever P touches 0 or 1,
///   C3  dPhi/dt ~ 0 wherever P is within tol_half of 1/2,
///   C4  RWA headroom: peak Rabi frequency mu*|V0| and peak |detuning|
///       both <= omega0/10.
/// Throws std::invalid_argument when the grid is coarser than ten samples
/// per carrier period.
ValidationReport validate(const SystemParams& sys,
                          const PopulationTrajectory& population,
                          const PhaseTrajectory& phase, const TimeGrid& grid,
                          const ValidationTolerances& tols = {});

}  // namespace revfield
