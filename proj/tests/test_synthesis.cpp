#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "revfield/synthesis.hpp"
#include "revfield/trajectory.hpp"
#include "revfield/units.hpp"

using namespace revfield;
using units::fs_to_au;
using units::per_fs_to_au;

namespace {

constexpr double pi = std::numbers::pi;
const SystemParams sodium = make_system(2.1, 2.479);
const double t100 = fs_to_au(100.0);

}  // namespace

TEST_CASE("quadrature components at a fixed population") {
  double phid = 1e-3;
  QuadratureComponents q =
      quadrature_at({0.3, 0.0, 0.0}, {0.0, phid, 0.0}, 0.0, sodium);
  CHECK(q.a == 0.0);
  CHECK(q.b ==
        doctest::Approx(phid * std::sqrt(0.21) / 0.4).epsilon(1e-12));
  CHECK(q.theta == 0.0);
}

TEST_CASE("quadrature components: half population cases") {
  // dPhi/dt = 0 with a transversal crossing: B vanishes
  QuadratureComponents q =
      quadrature_at({0.5, 1e-4, 0.0}, {0.2, 0.0, 0.0}, 1.0, sodium);
  CHECK(q.b == 0.0);
  CHECK(q.a == doctest::Approx(1e-4).epsilon(1e-12));

  // nonzero dPhi/dt exactly at P = 1/2 is singular
  CHECK_THROWS_AS(quadrature_at({0.5, 1e-4, 0.0},
                                {0.2, per_fs_to_au(0.01), 0.0}, 1.0, sodium),
                  SingularityError);

  // compliant crossing: dPhi/dt -> 0 together with 1-2P; B takes its limit
  double pd = -1e-4, phidd = -3e-6;
  QuadratureComponents lim =
      quadrature_at({0.5, pd, 0.0}, {0.9, 0.0, phidd}, 0.0, sodium);
  CHECK(lim.b == doctest::Approx(0.5 * phidd / (-2.0 * pd)).epsilon(1e-12));
}

TEST_CASE("quadrature components: population extrema") {
  CHECK_THROWS_AS(
      quadrature_at({0.0, 1e-4, 0.0}, {0.0, 0.0, 0.0}, 0.0, sodium),
      SingularityError);
  CHECK_THROWS_AS(
      quadrature_at({1.0, -1e-4, 0.0}, {0.0, 0.0, 0.0}, 0.0, sodium),
      SingularityError);
  QuadratureComponents off =
      quadrature_at({1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 0.0, sodium);
  CHECK(off.a == 0.0);
  CHECK(off.b == 0.0);
}

TEST_CASE("envelope_and_phase limit cases") {
  auto [v0_off, lam_off] = envelope_and_phase({0.0, 0.0, 0.3}, 1.0, 2.479);
  CHECK(v0_off == 0.0);
  CHECK(lam_off == 0.0);

  auto [v0_b, lam_b] = envelope_and_phase({0.0, 2e-4, 0.3}, 1.0, 2.479);
  CHECK(lam_b == doctest::Approx(pi / 2.0));
  CHECK(v0_b == doctest::Approx((2.0 / 2.479) * 2e-4));

  auto [v0_a, lam_a] = envelope_and_phase({3e-4, 0.0, 0.3}, 1.0, 2.479);
  CHECK(lam_a == 0.0);
  CHECK(v0_a == doctest::Approx((2.0 / 2.479) * 3e-4));
}

TEST_CASE("quadrature identity: V0 sin(theta+Lambda) equals the A/B form") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> upop(0.02, 0.98);
  std::uniform_real_distribution<double> urate(-0.01, 0.01);
  std::uniform_real_distribution<double> utime(0.0, t100);
  int tested = 0;
  while (tested < 200) {
    double p = upop(rng);
    if (std::abs(1.0 - 2.0 * p) < 1e-2) continue;
    double pd = urate(rng), phid = urate(rng);
    double t = utime(rng);
    QuadratureComponents q =
        quadrature_at({p, pd, 0.0}, {0.4, phid, 0.0}, t, sodium);
    auto [v0, lam] = envelope_and_phase(q, pd, sodium.mu);
    double lhs = v0 * std::sin(q.theta + lam);
    double rhs = (2.0 / sodium.mu) *
                 (q.a * std::sin(q.theta) + q.b * std::cos(q.theta));
    CHECK(std::abs(lhs - rhs) < 1e-12);
    ++tested;
  }
}

TEST_CASE("field_at: zero drive for constant targets") {
  auto p = PopulationTrajectory::constant(0.3);
  auto f = PhaseTrajectory::constant(0.7);
  FieldSample fs = field_at(sodium, p, f, fs_to_au(37.0));
  CHECK(fs.epsilon == 0.0);
  CHECK(fs.envelope == 0.0);
  CHECK(fs.detuning == f(0.0).d1);  // field off: detuning falls back to dPhi/dt

  // the constant-phase route is equally quiet for a flat population
  FieldSample quiet = field_constant_phase(sodium, p, 0.7, fs_to_au(37.0));
  CHECK(quiet.epsilon == 0.0);
}

TEST_CASE("field sample invariant: epsilon = envelope sin(total_phase)") {
  auto p = PopulationTrajectory::linear(0.8, 0.3, 0.0, t100);
  auto f = PhaseTrajectory::quadratic_vertex(0.0, pi / 4.0, fs_to_au(60.0),
                                             0.0, t100);
  for (int k = 0; k <= 500; ++k) {
    double t = t100 * k / 500.0;
    FieldSample fs = field_at(sodium, p, f, t);
    CHECK(std::abs(fs.epsilon - fs.envelope * std::sin(fs.total_phase)) <
          1e-12);
    CHECK(std::abs(fs.total_phase - (sodium.omega0 * t + fs.slow_phase)) <
          1e-9);
  }
}

TEST_CASE("specialization: constant phase reduces field_at to the 1/mu form") {
  auto p = PopulationTrajectory::tanh(0.1, 0.9, per_fs_to_au(0.05),
                                      fs_to_au(50.0));
  auto f = PhaseTrajectory::constant(0.7);
  std::mt19937 rng(778);
  std::uniform_real_distribution<double> utime(0.0, t100);
  for (int i = 0; i < 100; ++i) {
    double t = utime(rng);
    FieldSample general = field_at(sodium, p, f, t);
    FieldSample special = field_constant_phase(sodium, p, 0.7, t);
    CHECK(std::abs(general.epsilon - special.epsilon) < 1e-12);
    CHECK(std::abs(general.envelope - special.envelope) < 1e-12);
    CHECK(special.detuning == 0.0);
    CHECK(general.detuning == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("specialization: fixed population reduces field_at to the cos form") {
  auto p = PopulationTrajectory::constant(0.3);
  auto f = PhaseTrajectory::linear(0.0, pi / 4.0, 0.0, t100);
  std::mt19937 rng(779);
  std::uniform_real_distribution<double> utime(0.0, t100);
  for (int i = 0; i < 100; ++i) {
    double t = utime(rng);
    FieldSample general = field_at(sodium, p, f, t);
    FieldSample special = field_constant_population(sodium, 0.3, f, t);
    CHECK(std::abs(general.epsilon - special.epsilon) < 1e-12);
    CHECK(std::abs(general.envelope - special.envelope) < 1e-12);
    CHECK(special.detuning == f(t).d1);
    CHECK(general.detuning == doctest::Approx(f(t).d1).epsilon(1e-12));
  }
}

TEST_CASE("fixed-population synthesis rejects P0 = 1/2 and flags the band") {
  auto f = PhaseTrajectory::linear(0.0, pi / 4.0, 0.0, t100);
  CHECK_THROWS_AS(field_constant_population(sodium, 0.5, f, 1.0),
                  SingularityError);
  CHECK_THROWS_AS(field_constant_population(sodium, 0.0, f, 1.0),
                  SingularityError);
  CHECK(near_half_population_warning(0.48));
  CHECK(near_half_population_warning(0.52));
  CHECK_FALSE(near_half_population_warning(0.3));

  // dPhi/dt = 0 switches the drive off
  auto fc = PhaseTrajectory::constant(0.4);
  CHECK(field_constant_population(sodium, 0.3, fc, 1.0).epsilon == 0.0);
}

TEST_CASE("fig2 numbers: square pulse amplitude and blue shift") {
  auto f = PhaseTrajectory::linear(0.0, pi / 4.0, 0.0, t100);
  FieldSample fs = field_constant_population(sodium, 0.3, f, fs_to_au(37.0));
  // independent hand evaluation of the cos-form amplitude
  double phid = (pi / 4.0) / t100;
  double v0_expect = (2.0 / 2.479) * phid * std::sqrt(0.21) / 0.4;
  CHECK(fs.envelope == doctest::Approx(v0_expect).epsilon(1e-12));
  CHECK(units::field_au_to_vm(fs.envelope) ==
        doctest::Approx(90293784.6371133).epsilon(1e-9));
  CHECK(std::abs(units::field_au_to_vm(fs.envelope) - 0.9e8) <
        0.02 * 0.9e8);
  CHECK(units::hartree_to_mev(fs.detuning) ==
        doctest::Approx(5.169583876450758).epsilon(1e-9));
}

TEST_CASE("sign convention: rising population with flat phase gives V0 > 0") {
  auto p = PopulationTrajectory::tanh(0.1, 0.9, per_fs_to_au(0.05),
                                      fs_to_au(50.0));
  auto f = PhaseTrajectory::constant(0.0);
  FieldSample fs = field_at(sodium, p, f, fs_to_au(50.0));
  CHECK(fs.envelope > 0.0);
  CHECK(fs.lambda == 0.0);
}

TEST_CASE("detuning matches a finite difference of the slow phase") {
  auto p = PopulationTrajectory::linear(0.8, 0.3, 0.0, t100);
  auto f = PhaseTrajectory::quadratic_vertex(0.0, pi / 4.0, fs_to_au(60.0),
                                             0.0, t100);
  std::mt19937 rng(780);
  std::uniform_real_distribution<double> utime(0.02 * t100, 0.98 * t100);
  const double h = 1e-3;
  int tested = 0;
  while (tested < 100) {
    double t = utime(rng);
    if (std::abs(t - fs_to_au(60.0)) < 1.0) continue;  // stay off the crossing
    double det = detuning_at(p, f, t);
    FieldSample lo = field_at(sodium, p, f, t - h);
    FieldSample hi = field_at(sodium, p, f, t + h);
    double fd = (hi.slow_phase - lo.slow_phase) / (2.0 * h);
    // relative where the detuning is sizable, floored by the FD truncation
    // scale where it crosses zero
    CHECK(std::abs(fd - det) <= 1e-6 * std::max(std::abs(det), 3e-5));
    ++tested;
  }
}

TEST_CASE("detuning at the crossing itself stays finite and consistent") {
  auto p = PopulationTrajectory::linear(0.8, 0.3, 0.0, t100);
  auto f = PhaseTrajectory::quadratic_vertex(0.0, pi / 4.0, fs_to_au(60.0),
                                             0.0, t100);
  double tc = fs_to_au(60.0);
  double at = detuning_at(p, f, tc);
  double near = detuning_at(p, f, tc + 0.5);
  CHECK(std::isfinite(at));
  CHECK(std::abs(at - near) < 1e-5);
}

TEST_CASE("rwa envelope reconstructs the real field") {
  auto p = PopulationTrajectory::linear(0.8, 0.3, 0.0, t100);
  auto f = PhaseTrajectory::quadratic_vertex(0.0, pi / 4.0, fs_to_au(60.0),
                                             0.0, t100);
  std::mt19937 rng(781);
  std::uniform_real_distribution<double> utime(0.0, t100);
  for (int i = 0; i < 1000; ++i) {
    double t = utime(rng);
    FieldSample fs = field_at(sodium, p, f, t);
    std::complex<double> env = rwa_envelope(fs);
    std::complex<double> carrier =
        std::exp(std::complex<double>(0.0, -sodium.omega0 * t));
    double rebuilt = (env * carrier + std::conj(env * carrier)).real();
    CHECK(std::abs(rebuilt - fs.envelope * std::sin(fs.total_phase)) < 1e-12);
  }

  FieldSample off{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  CHECK(rwa_envelope(off) == std::complex<double>(0.0, 0.0));

  FieldSample plain{0.0, 2e-4, 0.0, 0.0, 0.0, 0.0};
  std::complex<double> env = rwa_envelope(plain);
  CHECK(std::abs(env - std::complex<double>(0.0, 1e-4)) < 1e-18);
}
