#include "revfield/synthesis.hpp"

#include <cmath>
#include <complex>

namespace revfield {

namespace {

constexpr double rate_floor = 1e-14;    // rates below this count as zero
constexpr double extremum_eps = 1e-12;  // population this close to 0/1 is "at" the extremum
constexpr double rate_cap = 1.0;        // a.u.; |B| beyond this inside the guard band is singular
constexpr double field_off_norm = 1e-24;

struct QuadTerms {
  double a;
  double b;
  double adot;
  double bdot;
  bool at_crossing;  // adot/bdot not available from the samples there
};

// Shared evaluation of A, B and their time derivatives. The half-crossing
// branch evaluates B by its analytic limit sqrt(Q) * Phidd / (-2 Pd), which
// exists exactly when the pair satisfies the equal-population constraint;
// a phase rate inconsistent with that limit is singular.
QuadTerms quad_terms(const TrajectorySample& pop, const TrajectorySample& pha,
                     double half_guard) {
  double p = pop.value, pd = pop.d1, pdd = pop.d2;
  double phd = pha.d1, phdd = pha.d2;

  if (p <= extremum_eps || p >= 1.0 - extremum_eps) {
    if (std::abs(pd) < rate_floor) return {0.0, 0.0, 0.0, 0.0, false};
    throw SingularityError(
        "population at an extremum (P = 0 or 1) with nonzero dP/dt");
  }

  double q = p * (1.0 - p);
  double sq = std::sqrt(q);
  double d = 1.0 - 2.0 * p;
  double a = pd / (2.0 * sq);
  double adot = pdd / (2.0 * sq) - pd * pd * d / (4.0 * q * sq);

  double b;
  if (std::abs(d) < half_crossing_band) {
    double pred =
        std::abs(pd) >= rate_floor ? std::abs(phdd * d / (2.0 * pd)) : 0.0;
    if (std::abs(phd) < rate_floor || std::abs(phd) <= 10.0 * pred + rate_floor) {
      double ratio = std::abs(pd) >= rate_floor ? phdd / (-2.0 * pd) : 0.0;
      b = sq * ratio;
    } else {
      throw SingularityError(
          "dPhi/dt does not vanish at the half-population crossing");
    }
    return {a, b, adot, 0.0, true};
  }

  if (std::abs(phd) < rate_floor) {
    b = 0.0;
  } else {
    b = phd * sq / d;
    if (std::abs(d) < half_guard && std::abs(b) > rate_cap)
      throw SingularityError(
          "phase rate divided by 1-2P diverges near the half population");
  }
  double bdot =
      phdd * sq / d + phd * pd * (1.0 / (2.0 * sq) + 2.0 * sq / (d * d));
  return {a, b, adot, bdot, false};
}

double lambda_rate(const QuadTerms& qt) {
  double n2 = qt.a * qt.a + qt.b * qt.b;
  if (n2 < field_off_norm) return 0.0;
  return (qt.a * qt.bdot - qt.b * qt.adot) / n2;
}

double sign_hint_of(double pd) {
  return (std::abs(pd) >= rate_floor && pd < 0.0) ? -1.0 : 1.0;
}

}  // namespace

QuadratureComponents quadrature_at(const TrajectorySample& population,
                                   const TrajectorySample& phase, double t,
                                   const SystemParams& sys, double half_guard) {
  QuadTerms qt = quad_terms(population, phase, half_guard);
  return {qt.a, qt.b, sys.omega0 * t + phase.value};
}

std::pair<double, double> envelope_and_phase(const QuadratureComponents& q,
                                             double pdot_sign_hint,
                                             double mu) {
  if (q.a == 0.0 && q.b == 0.0) return {0.0, 0.0};
  double s = pdot_sign_hint < 0.0 ? -1.0 : 1.0;
  double v0 = s * (2.0 / mu) * std::hypot(q.a, q.b);
  double lambda = std::atan2(q.b * s, q.a * s);
  return {v0, lambda};
}

FieldSample field_at(const SystemParams& sys, const PopulationTrajectory& p,
                     const PhaseTrajectory& phi, double t, double half_guard) {
  TrajectorySample ps = p(t);
  TrajectorySample fs = phi(t);
  QuadTerms qt = quad_terms(ps, fs, half_guard);
  double theta = sys.omega0 * t + fs.value;
  double eps = (2.0 / sys.mu) * (qt.a * std::sin(theta) + qt.b * std::cos(theta));
  auto [v0, lambda] =
      envelope_and_phase({qt.a, qt.b, theta}, sign_hint_of(ps.d1), sys.mu);

  double detuning;
  if (!qt.at_crossing) {
    detuning = fs.d1 + lambda_rate(qt);
  } else {
    // dB/dt needs the third phase derivative right at the crossing; a
    // symmetric pair of nearby samples gives the reported value instead.
    detuning = detuning_at(p, phi, t);
  }
  return {eps, v0, lambda, theta + lambda, detuning, fs.value + lambda};
}

FieldSample field_constant_phase(const SystemParams& sys,
                                 const PopulationTrajectory& p, double phi0,
                                 double t) {
  TrajectorySample ps = p(t);
  if (ps.value <= extremum_eps || ps.value >= 1.0 - extremum_eps)
    throw SingularityError(
        "constant-phase field undefined with the population at 0 or 1");
  double q = ps.value * (1.0 - ps.value);
  double v0 = ps.d1 / (sys.mu * std::sqrt(q));
  double theta = sys.omega0 * t + phi0;
  return {v0 * std::sin(theta), v0, 0.0, theta, 0.0, phi0};
}

FieldSample field_constant_population(const SystemParams& sys, double p0,
                                      const PhaseTrajectory& phi, double t) {
  if (!(p0 > 0.0 && p0 < 1.0))
    throw SingularityError(
        "fixed-population field needs P0 strictly inside (0, 1)");
  if (std::abs(1.0 - 2.0 * p0) < default_half_guard)
    throw SingularityError(
        "cannot change the relative phase while the populations stay equal "
        "(P0 = 1/2)");
  TrajectorySample fs = phi(t);
  double b = fs.d1 * std::sqrt(p0 * (1.0 - p0)) / (1.0 - 2.0 * p0);
  double theta = sys.omega0 * t + fs.value;
  double eps = (2.0 / sys.mu) * b * std::cos(theta);
  if (b == 0.0) return {0.0, 0.0, 0.0, theta, fs.d1, fs.value};
  double v0 = (2.0 / sys.mu) * std::abs(b);
  double lambda = std::copysign(1.5707963267948966, b);
  return {eps, v0, lambda, theta + lambda, fs.d1, fs.value + lambda};
}

double detuning_at(const PopulationTrajectory& p, const PhaseTrajectory& phi,
                   double t) {
  TrajectorySample ps = p(t);
  TrajectorySample fs = phi(t);
  QuadTerms qt = quad_terms(ps, fs, default_half_guard);
  if (!qt.at_crossing) return fs.d1 + lambda_rate(qt);

  // At the crossing itself: average two straddling samples.
  const double off = 1e-3;
  double acc = 0.0;
  int used = 0;
  for (double tt : {t - off, t + off}) {
    TrajectorySample pso = p(tt);
    TrajectorySample fso = phi(tt);
    QuadTerms qto = quad_terms(pso, fso, default_half_guard);
    if (qto.at_crossing) continue;
    acc += fso.d1 + lambda_rate(qto);
    ++used;
  }
  return used > 0 ? acc / used : fs.d1;
}

std::complex<double> rwa_envelope(const FieldSample& fs) {
  return std::complex<double>(0.0, 0.5 * fs.envelope) *
         std::exp(std::complex<double>(0.0, -fs.slow_phase));
}

}  // namespace revfield
