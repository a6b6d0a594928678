#pragma once

#include <variant>
#include <vector>

#include "revfield/system.hpp"

namespace revfield {

/// Value and first/second time derivative of a dynamical function at one
/// instant. Populations are dimensionless, phases in rad; derivatives are
/// per a.u. time (and per a.u. time squared).
struct TrajectorySample {
  double value;
  double d1;
  double d2;
};

namespace pop {

struct Constant {
  double p0;
};

struct Linear {
  double p_initial, p_final;
  double t0, tf;
  double slope;
};

// Quadratic fixed by Lagrange interpolation through (t0, Pi), (t_half, 1/2),
// (tf, Pf); stored in Newton form.
struct QuadraticThroughHalf {
  double p_initial, p_final;
  double t0, t_half, tf;
  double dd01, dd012;  // divided differences
};

// P(t) = A tanh(alpha t + beta) + B, joining Pi -> Pf asymptotically with
// P(t_half) = 1/2.
struct Tanh {
  double p_initial, p_final;
  double alpha, t_half;
  double big_a, big_b, beta;
};

// P(t) = G sech(xi (t - t_peak)) + F, same asymptote P_ends on both sides.
struct Sech {
  double p_ends, p_max;
  double xi, t_peak;
  double big_g, big_f;
};

}  // namespace pop

namespace phase {

struct Constant {
  double phi0;
};

struct Linear {
  double phi_initial, phi_final;
  double t0, tf;
  double slope;
};

// Phi(t) = a (t - t_vertex)^2 + c with endpoint interpolation and a
// stationary point at t_vertex.
struct QuadraticVertex {
  double phi_initial, phi_final;
  double t0, t_vertex, tf;
  double a, c;
};

// Two sech branches joined at t_join with continuous value and first two
// derivatives (eta2 = eta1 sqrt(chi1/chi2)).
struct SechPair {
  double phi_initial, phi_final, phi_max;
  double eta1, eta2, t_join;
  double t0, tf;
  double chi1, chi2, sigma1, sigma2;
};

// Phi(t) = G tanh(chi (t - t_star)) + F, joining Phi_i -> Phi_f
// asymptotically.
struct Tanh {
  double phi_initial, phi_final;
  double chi, t_star;
  double big_g, big_f;
};

}  // namespace phase

/// Prescribed ground-level population P(t). Immutable after construction;
/// evaluation is pure. All constructors throw std::invalid_argument when a
/// parameter violates the family's constraints.
class PopulationTrajectory {
 public:
  enum class Kind { constant, linear, quadratic_through_half, tanh, sech };
  using Family =
      std::variant<pop::Constant, pop::Linear, pop::QuadraticThroughHalf,
                   pop::Tanh, pop::Sech>;

  static PopulationTrajectory constant(double p0);
  static PopulationTrajectory linear(double p_initial, double p_final,
                                     double t0, double tf);
  static PopulationTrajectory quadratic_through_half(double p_initial,
                                                     double p_final,
                                                     double t_half, double t0,
                                                     double tf);
  static PopulationTrajectory tanh(double p_initial, double p_final,
                                   double alpha, double t_half);
  static PopulationTrajectory sech(double p_ends, double p_max, double xi,
                                   double t_peak);

  TrajectorySample operator()(double t) const;
  Kind kind() const;
  const Family& family() const { return family_; }

 private:
  explicit PopulationTrajectory(Family f) : family_(std::move(f)) {}
  Family family_;
};

/// Prescribed relative phase Phi(t), in rad.
class PhaseTrajectory {
 public:
  enum class Kind { constant, linear, quadratic_vertex, sech_pair, tanh };
  using Family = std::variant<phase::Constant, phase::Linear,
                              phase::QuadraticVertex, phase::SechPair,
                              phase::Tanh>;

  static PhaseTrajectory constant(double phi0);
  static PhaseTrajectory linear(double phi_initial, double phi_final,
                                double t0, double tf);
  // Rejects the midpoint degeneracy (tf - t_vertex)^2 == (t0 - t_vertex)^2
  // with phi_initial != phi_final.
  static PhaseTrajectory quadratic_vertex(double phi_initial, double phi_final,
                                          double t_vertex, double t0,
                                          double tf);
  static PhaseTrajectory sech_pair(double phi_initial, double phi_final,
                                   double phi_max, double eta1, double t_join,
                                   double t0, double tf);
  static PhaseTrajectory tanh(double phi_initial, double phi_final, double chi,
                              double t_star);

  TrajectorySample operator()(double t) const;
  Kind kind() const;
  const Family& family() const { return family_; }

 private:
  explicit PhaseTrajectory(Family f) : family_(std::move(f)) {}
  Family family_;
};

/// All times t in [t0, tf] where P(t) crosses 1/2, located by a sign scan on
/// the grid samples followed by bisection to +-tol.
std::vector<double> find_half_crossings(const PopulationTrajectory& traj,
                                        const TimeGrid& grid,
                                        double tol = 1e-6);

}  // namespace revfield
