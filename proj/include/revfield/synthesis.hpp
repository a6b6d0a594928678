#pragma once

#include <complex>
#include <stdexcept>
#include <utility>

#include "revfield/system.hpp"
#include "revfield/trajectory.hpp"

namespace revfield {

/// Raised where the inversion formulas lose meaning: population at an
/// extremum with nonzero rate, or a half-population point with a phase rate
/// that does not vanish there.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature form of the synthesized field at one instant:
///   epsilon = (2/mu) (A sin(theta) + B cos(theta)),  theta = omega0 t + Phi,
/// with A = dP/dt / (2 sqrt(P(1-P))) and B = dPhi/dt sqrt(P(1-P))/(1-2P).
/// This is algebraically identical to the envelope/phase form but has no
/// sign singularity where dP/dt = 0.
struct QuadratureComponents {
  double a;      // a.u.^-1
  double b;      // a.u.^-1
  double theta;  // rad
};

/// Synthesized field at one instant. epsilon = envelope * sin(total_phase)
/// holds to within 1e-12; envelope carries the sign(dP/dt) prefactor.
struct FieldSample {
  double epsilon;      // a.u.
  double envelope;     // V0, a.u., signed
  double lambda;       // rad
  double total_phase;  // omega0 t + Phi + Lambda, rad
  double detuning;     // dPhi/dt + dLambda/dt, a.u.^-1
  double slow_phase;   // Phi + Lambda, rad (carrier removed)
};

// Width of the |1-2P| band treated as "at a half crossing" and the band in
// which a non-vanishing phase rate is diagnosed as singular.
inline constexpr double half_crossing_band = 1e-9;
inline constexpr double default_half_guard = 1e-6;

QuadratureComponents quadrature_at(const TrajectorySample& population,
                                   const TrajectorySample& phase, double t,
                                   const SystemParams& sys,
                                   double half_guard = default_half_guard);

/// Recovers the signed envelope and phase offset from the quadrature
/// components: V0 = sign * (2/mu) sqrt(A^2+B^2), Lambda = atan2(B s, A s),
/// where sign is sign(dP/dt) (taken +1 when dP/dt = 0). The identity
/// V0 sin(theta + Lambda) = (2/mu)(A sin theta + B cos theta) holds for
/// either sign choice.
std::pair<double, double> envelope_and_phase(const QuadratureComponents& q,
                                             double pdot_sign_hint, double mu);

FieldSample field_at(const SystemParams& sys, const PopulationTrajectory& p,
                     const PhaseTrajectory& phi, double t,
                     double half_guard = default_half_guard);

/// Constant-relative-phase limit: epsilon = (1/mu) dP/dt / sqrt(P(1-P))
/// * sin(omega0 t + phi0); detuning is identically zero.
FieldSample field_constant_phase(const SystemParams& sys,
                                 const PopulationTrajectory& p, double phi0,
                                 double t);

/// Fixed-population limit: epsilon = (2/mu) dPhi/dt sqrt(P0(1-P0))/(1-2P0)
/// * cos(omega0 t + Phi); detuning equals dPhi/dt. Rejects p0 = 1/2; the
/// band |p0 - 1/2| < 0.05 is legal but flagged by
/// near_half_population_warning().
FieldSample field_constant_population(const SystemParams& sys, double p0,
                                      const PhaseTrajectory& phi, double t);

inline bool near_half_population_warning(double p0) {
  double d = p0 - 0.5;
  return d > -0.05 && d < 0.05;
}

/// Instantaneous detuning dPhi/dt + dLambda/dt with
/// dLambda/dt = (A dB/dt - B dA/dt)/(A^2+B^2) from the analytic trajectory
/// derivatives. Returns dPhi/dt where the field is off (A^2+B^2 < 1e-24).
/// Half-crossing samples are evaluated by a symmetric offset average.
double detuning_at(const PopulationTrajectory& p, const PhaseTrajectory& phi,
                   double t);

/// Complex RWA envelope for a resonant carrier:
/// eps(t) = (i V0/2) exp(-i (Phi + Lambda)), so that
/// eps e^{-i omega0 t} + conj(eps) e^{i omega0 t} = V0 sin(total_phase).
std::complex<double> rwa_envelope(const FieldSample& fs);

}  // namespace revfield
