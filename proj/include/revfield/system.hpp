#pragma once

namespace revfield {

/// Two-level system constants in atomic units. The ground-state energy is
/// taken as 0 and the excited-state energy as omega0; only the gap enters
/// the dynamics.
struct SystemParams {
  double omega0;  // transition angular frequency / energy gap [hartree]
  double mu;      // transition dipole projection [a.u.]

  double carrier_period() const;  // 2*pi/omega0 [a.u. time]
};

/// Builds SystemParams from the conventional eV/a.u. inputs.
/// Throws std::invalid_argument unless omega0_eV > 0 and mu_au != 0.
SystemParams make_system(double omega0_eV, double mu_au);

/// Uniform time grid with n_steps intervals (n_steps + 1 samples).
struct TimeGrid {
  TimeGrid(double t0, double tf, int n_steps);

  double t0;
  double tf;
  int n_steps;

  double dt() const { return (tf - t0) / n_steps; }
  int n_samples() const { return n_steps + 1; }
  double time_at(int k) const;  // endpoints exact
};

}  // namespace revfield
