#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include "revfield/system.hpp"
#include "revfield/validation.hpp"

namespace revfield {

/// Interaction-picture amplitudes of the ground and excited levels.
struct QuantumState {
  std::complex<double> cg;
  std::complex<double> ce;

  double population_g() const { return std::norm(cg); }
  double norm_sq() const { return std::norm(cg) + std::norm(ce); }
};

/// State with |cg|^2 = p_initial and relative phase arg(cg) - arg(ce) =
/// phi_initial, in the gauge arg(ce) = 0. Throws for p_initial outside
/// [0, 1].
QuantumState init_state(double p_initial, double phi_initial);

struct StateDerivative {
  std::complex<double> dcg;
  std::complex<double> dce;
};

/// RWA equations of motion with a resonant carrier:
///   dCg/dt = i mu conj(env) Ce,   dCe/dt = i mu env Cg.
StateDerivative rwa_derivative(const QuantumState& s,
                               std::complex<double> envelope,
                               const SystemParams& sys);

/// Full (non-RWA) equations with the real field, counter-rotating terms
/// retained:
///   dCg/dt = i mu eps Ce e^{-i omega0 t},  dCe/dt = i mu eps Cg e^{+i omega0 t}.
StateDerivative full_derivative(const QuantumState& s, double t,
                                double eps_real, const SystemParams& sys);

struct RwaDrive {
  std::function<std::complex<double>(double)> envelope;
};
struct FullDrive {
  std::function<double(double)> field;
};
using FieldSource = std::variant<RwaDrive, FullDrive>;

/// Sampled evolution plus derived observables. relative_phase is unwrapped
/// (successive samples differ by less than pi) and NaN where either
/// amplitude magnitude falls below 1e-12.
struct TimeSeries {
  std::vector<double> times;  // a.u., strictly increasing
  std::vector<QuantumState> states;
  std::vector<double> populations_g;
  std::vector<double> relative_phase;  // rad
  std::vector<double> norm_residual;   // | |cg|^2 + |ce|^2 - 1 |

  std::size_t size() const { return times.size(); }
};

/// Fixed-step classical RK4 propagation over the grid, recording every step.
/// Preconditions on the step size (throws std::invalid_argument, reporting
/// the required step): RWA mode needs n_steps >= 200; full mode needs
/// dt <= (2 pi / omega0)/50.
TimeSeries integrate(const SystemParams& sys, const FieldSource& drive,
                     const QuantumState& s0, const TimeGrid& grid);

/// arg(cg) - arg(ce), unwrapped; NaN marks samples where the phase is
/// undefined (an amplitude below 1e-12).
std::vector<double> relative_phase_series(const TimeSeries& series);

/// Residual of the real-field phase relation,
///   r(t) = dphi_e/dt ce^2 - dphi_g/dt cg^2,
/// with the phase rates taken by central differences on the grid
/// (second-order one-sided stencils at the ends). NaN where a phase is
/// undefined.
std::vector<double> phase_relation_residual(const TimeSeries& series);

/// Wraps phase_relation_residual as a report: one CPhaseRel violation at the
/// worst sample if max |r| exceeds tol (a.u.^-1).
ValidationReport check_phase_relation(const TimeSeries& series, double tol);

}  // namespace revfield
