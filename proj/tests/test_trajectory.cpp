#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "revfield/trajectory.hpp"
#include "revfield/units.hpp"
#include "revfield/validation.hpp"

using namespace revfield;
using units::fs_to_au;
using units::per_fs_to_au;

namespace {

constexpr double pi = std::numbers::pi;
const double t100 = fs_to_au(100.0);
const double t200 = fs_to_au(200.0);

// Central-difference check of (d1, d2) against the analytic values at random
// interior points.
template <typename Traj>
void check_derivatives(const Traj& traj, double t0, double tf,
                       unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> pick(t0 + 0.01 * (tf - t0),
                                              tf - 0.01 * (tf - t0));
  double h = (tf - t0) * 1e-6;
  for (int i = 0; i < 100; ++i) {
    double t = pick(rng);
    TrajectorySample mid = traj(t);
    TrajectorySample lo = traj(t - h);
    TrajectorySample hi = traj(t + h);
    double fd1 = (hi.value - lo.value) / (2.0 * h);
    double fd2 = (hi.d1 - lo.d1) / (2.0 * h);
    // the additive term is the difference-quotient roundoff floor
    CHECK(std::abs(fd1 - mid.d1) < 1e-6 * std::abs(mid.d1) + 1e-12);
    CHECK(std::abs(fd2 - mid.d2) < 1e-4 * std::abs(mid.d2) + 1e-12);
  }
}

}  // namespace

TEST_CASE("linear population matches the fig3 prescription") {
  auto p = PopulationTrajectory::linear(0.8, 0.3, 0.0, t100);
  CHECK(p(fs_to_au(60.0)).value == doctest::Approx(0.5).epsilon(1e-12));
  TrajectorySample at0 = p(0.0);
  CHECK(at0.value == 0.8);
  CHECK(units::au_rate_to_per_fs(at0.d1) == doctest::Approx(-0.005));
  CHECK(at0.d2 == 0.0);
}

TEST_CASE("tanh population hits 1/2 at the prescribed time") {
  auto p = PopulationTrajectory::tanh(0.1, 1.0, per_fs_to_au(0.068),
                                      fs_to_au(60.0));
  CHECK(std::abs(p(fs_to_au(60.0)).value - 0.5) < 1e-9);
  // asymptote value at tf, frozen from the closed form
  CHECK(p(t100).value == doctest::Approx(0.9951444197072316).epsilon(1e-12));
}

TEST_CASE("tanh population boundary residual is the analytic one") {
  double alpha = per_fs_to_au(0.04);
  auto p = PopulationTrajectory::tanh(0.99, 0.01, alpha, fs_to_au(100.0));
  const auto& f = std::get<pop::Tanh>(p.family());
  double resid = std::abs(f.big_a) * (1.0 - std::tanh(std::abs(f.beta)));
  CHECK(std::abs(p(0.0).value - 0.99) <= resid + 1e-15);
}

TEST_CASE("quadratic-through-half interpolates its three nodes") {
  auto p = PopulationTrajectory::quadratic_through_half(0.1, 0.8,
                                                        fs_to_au(30.0), 0.0,
                                                        t100);
  CHECK(std::abs(p(0.0).value - 0.1) < 1e-12);
  CHECK(std::abs(p(fs_to_au(30.0)).value - 0.5) < 1e-12);
  CHECK(std::abs(p(t100).value - 0.8) < 1e-12);
}

TEST_CASE("sech population peaks at t_peak and keeps its asymptote") {
  auto p =
      PopulationTrajectory::sech(0.5, 0.7, per_fs_to_au(0.08), fs_to_au(100.0));
  TrajectorySample peak = p(fs_to_au(100.0));
  CHECK(peak.value == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(std::abs(peak.d1) < 1e-15);
  // analytic residual against the asymptote at the ends
  double resid = 0.2 / std::cosh(per_fs_to_au(0.08) * fs_to_au(100.0));
  CHECK(std::abs(p(0.0).value - 0.5) == doctest::Approx(resid).epsilon(1e-9));
}

TEST_CASE("population constructors reject bad parameters") {
  CHECK_THROWS_AS(PopulationTrajectory::constant(1.5), std::invalid_argument);
  CHECK_THROWS_AS(PopulationTrajectory::linear(-0.1, 0.5, 0.0, t100),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      PopulationTrajectory::tanh(0.3, 0.3, per_fs_to_au(0.1), fs_to_au(50.0)),
      std::invalid_argument);
  // 1/2 outside the asymptote range: gamma >= 1
  CHECK_THROWS_AS(
      PopulationTrajectory::tanh(0.6, 0.9, per_fs_to_au(0.1), fs_to_au(50.0)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      PopulationTrajectory::sech(0.4, 0.5, per_fs_to_au(0.1), fs_to_au(50.0)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      PopulationTrajectory::sech(0.4, 1.0, per_fs_to_au(0.1), fs_to_au(50.0)),
      std::invalid_argument);
}

TEST_CASE("quadratic vertex phase: fig3 parameters") {
  auto q = PhaseTrajectory::quadratic_vertex(0.0, pi / 4.0, fs_to_au(60.0),
                                             0.0, t100);
  TrajectorySample vertex = q(fs_to_au(60.0));
  CHECK(vertex.value == doctest::Approx(1.413716694115407).epsilon(1e-12));
  CHECK(vertex.d1 == 0.0);
  CHECK(std::abs(q(0.0).value) < 1e-12);
  CHECK(q(t100).value == doctest::Approx(pi / 4.0).epsilon(1e-12));

  // closed-form leading coefficient, in rad/fs^2
  const auto& f = std::get<phase::QuadraticVertex>(q.family());
  double a_per_fs2 =
      f.a / (units::fs_per_au_time * units::fs_per_au_time);
  CHECK(a_per_fs2 == doctest::Approx(-0.00039269908169872416).epsilon(1e-12));
}

TEST_CASE("quadratic vertex phase rejects the midpoint degeneracy") {
  CHECK_THROWS_AS(PhaseTrajectory::quadratic_vertex(0.0, pi / 4.0,
                                                    fs_to_au(50.0), 0.0, t100),
                  std::invalid_argument);
  // equal endpoints at the midpoint degenerate to a constant
  auto q = PhaseTrajectory::quadratic_vertex(0.3, 0.3, fs_to_au(50.0), 0.0,
                                             t100);
  CHECK(q(fs_to_au(20.0)).value == doctest::Approx(0.3));
  CHECK(q(fs_to_au(20.0)).d1 == 0.0);
  CHECK_THROWS_AS(PhaseTrajectory::quadratic_vertex(0.0, 1.0, t100, 0.0, t100),
                  std::invalid_argument);
}

TEST_CASE("tanh phase midpoint value and endpoint residual") {
  auto q =
      PhaseTrajectory::tanh(0.0, pi / 8.0, per_fs_to_au(0.08), fs_to_au(100.0));
  CHECK(q(fs_to_au(100.0)).value == doctest::Approx(pi / 16.0).epsilon(1e-12));
  // asymptotic approach to the endpoints, off by the analytic residual
  double big_g = pi / 16.0;
  double resid = big_g * (1.0 - std::tanh(per_fs_to_au(0.08) * fs_to_au(100.0)));
  CHECK(std::abs(q(fs_to_au(200.0)).value - pi / 8.0) ==
        doctest::Approx(resid).epsilon(1e-9));
}

TEST_CASE("sech-pair phase: endpoints, peak, and C2 continuity at the join") {
  double eta1 = per_fs_to_au(1.65 * 0.04);
  double tj = fs_to_au(100.0);
  auto q = PhaseTrajectory::sech_pair(0.0, pi / 4.0, 1.4 * pi / 4.0, eta1, tj,
                                      0.0, t200);

  const auto& f = std::get<phase::SechPair>(q.family());
  CHECK(f.chi1 == doctest::Approx(1.1025571903276459).epsilon(1e-12));
  CHECK(f.chi2 == doctest::Approx(0.3150163400936131).epsilon(1e-12));
  CHECK(f.eta2 / f.eta1 ==
        doctest::Approx(1.8708286933869704).epsilon(1e-12));

  CHECK(std::abs(q(0.0).value - 0.0) < 1e-12);
  CHECK(q(tj).value == doctest::Approx(1.4 * pi / 4.0).epsilon(1e-12));

  // value/d1/d2 agree across the join (the eta2 relation)
  double below = std::nextafter(tj, 0.0);
  TrajectorySample left = q(below);
  TrajectorySample right = q(tj);
  CHECK(std::abs(left.value - right.value) < 1e-10);
  CHECK(std::abs(left.d1 - right.d1) < 1e-10);
  CHECK(std::abs(left.d2 - right.d2) < 1e-10);

  // the tf endpoint carries the analytic residual of the printed
  // construction (chi2 is built with eta1 inside the sech)
  double resid = f.chi2 * (1.0 / std::cosh(f.eta2 * (t200 - tj)) -
                           1.0 / std::cosh(f.eta1 * (t200 - tj)));
  CHECK(q(t200).value - pi / 4.0 ==
        doctest::Approx(resid).epsilon(1e-9));
  CHECK(std::abs(resid) < 1e-3);
}

TEST_CASE("sech-pair phase rejects mixed-sign branch amplitudes") {
  // Phi_max between the endpoints makes chi1 and chi2 differ in sign
  CHECK_THROWS_AS(PhaseTrajectory::sech_pair(0.0, pi / 4.0, 0.5,
                                             per_fs_to_au(0.066),
                                             fs_to_au(100.0), 0.0, t200),
                  std::invalid_argument);
}

TEST_CASE("derivatives agree with central differences for every family") {
  check_derivatives(PopulationTrajectory::linear(0.8, 0.3, 0.0, t100), 0.0,
                    t100, 101);
  check_derivatives(PopulationTrajectory::quadratic_through_half(
                        0.1, 0.8, fs_to_au(30.0), 0.0, t100),
                    0.0, t100, 102);
  check_derivatives(PopulationTrajectory::tanh(0.1, 1.0, per_fs_to_au(0.068),
                                               fs_to_au(60.0)),
                    0.0, t100, 103);
  check_derivatives(
      PopulationTrajectory::sech(0.5, 0.7, per_fs_to_au(0.08), fs_to_au(100.0)),
      0.0, t200, 104);
  check_derivatives(PhaseTrajectory::quadratic_vertex(0.0, pi / 4.0,
                                                      fs_to_au(60.0), 0.0,
                                                      t100),
                    0.0, t100, 105);
  check_derivatives(PhaseTrajectory::sech_pair(0.0, pi / 4.0, 1.4 * pi / 4.0,
                                               per_fs_to_au(0.066),
                                               fs_to_au(100.0), 0.0, t200),
                    0.0, t200, 106);
  check_derivatives(
      PhaseTrajectory::tanh(0.0, pi / 8.0, per_fs_to_au(0.08), fs_to_au(100.0)),
      0.0, t200, 107);
}

TEST_CASE("find_half_crossings locates the linear root") {
  auto p = PopulationTrajectory::linear(0.8, 0.3, 0.0, t100);
  TimeGrid grid(0.0, t100, 500);
  auto roots = find_half_crossings(p, grid, 1e-6);
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0] - fs_to_au(60.0)) < 1e-5);
}

TEST_CASE("find_half_crossings: no crossing and tanh crossing") {
  TimeGrid grid(0.0, t100, 500);
  CHECK(find_half_crossings(PopulationTrajectory::constant(0.3), grid).empty());

  auto p = PopulationTrajectory::tanh(0.1, 1.0, per_fs_to_au(0.068),
                                      fs_to_au(60.0));
  auto roots = find_half_crossings(p, grid, 1e-6);
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0] - fs_to_au(60.0)) < 1e-5);
}

TEST_CASE("find_half_crossings validates tol") {
  TimeGrid grid(0.0, t100, 100);
  CHECK_THROWS_AS(
      find_half_crossings(PopulationTrajectory::constant(0.5), grid, 0.0),
      std::invalid_argument);
}

TEST_CASE("validate accepts the fig3 trajectory pair") {
  SystemParams sodium = make_system(2.1, 2.479);
  auto p = PopulationTrajectory::linear(0.8, 0.3, 0.0, t100);
  auto f = PhaseTrajectory::quadratic_vertex(0.0, pi / 4.0, fs_to_au(60.0),
                                             0.0, t100);
  ValidationReport report =
      validate(sodium, p, f, TimeGrid(0.0, t100, 2000));
  CHECK(report.ok());
}

TEST_CASE("validate flags C2 where a linear population reaches one") {
  SystemParams sodium = make_system(2.1, 2.479);
  auto p = PopulationTrajectory::linear(0.5, 1.0, 0.0, t100);
  auto f = PhaseTrajectory::constant(0.0);
  ValidationReport report =
      validate(sodium, p, f, TimeGrid(0.0, t100, 2000));
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].constraint == Violation::Constraint::C2);
  CHECK(std::abs(report.violations[0].time - t100) < 1.0);
}

TEST_CASE("validate flags C3 for a phase still moving at the half crossing") {
  SystemParams sodium = make_system(2.1, 2.479);
  auto p = PopulationTrajectory::linear(0.8, 0.3, 0.0, t100);
  auto f = PhaseTrajectory::linear(0.0, pi / 4.0, 0.0, t100);
  ValidationReport report =
      validate(sodium, p, f, TimeGrid(0.0, t100, 2000));
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].constraint == Violation::Constraint::C3);
  CHECK(std::abs(report.violations[0].time - fs_to_au(60.0)) < fs_to_au(1.0));
}

TEST_CASE("validate flags C1 when the quadratic dips below zero") {
  SystemParams sodium = make_system(2.1, 2.479);
  auto p = PopulationTrajectory::quadratic_through_half(0.9, 0.9,
                                                        fs_to_au(10.0), 0.0,
                                                        t100);
  auto f = PhaseTrajectory::constant(0.0);
  ValidationReport report =
      validate(sodium, p, f, TimeGrid(0.0, t100, 2000));
  bool has_c1 = false;
  for (const Violation& v : report.violations)
    has_c1 |= v.constraint == Violation::Constraint::C1;
  CHECK(has_c1);
}

TEST_CASE("validate rejects a grid coarser than ten samples per period") {
  SystemParams sodium = make_system(2.1, 2.479);
  auto p = PopulationTrajectory::constant(0.3);
  auto f = PhaseTrajectory::constant(0.0);
  CHECK_THROWS_AS(validate(sodium, p, f, TimeGrid(0.0, t100, 100)),
                  std::invalid_argument);
}

TEST_CASE("validate honors overridden tolerances") {
  SystemParams sodium = make_system(2.1, 2.479);
  auto p = PopulationTrajectory::linear(0.8, 0.3, 0.0, t100);
  auto f = PhaseTrajectory::quadratic_vertex(0.0, pi / 4.0, fs_to_au(60.0),
                                             0.0, t100);
  CHECK(validate(sodium, p, f, TimeGrid(0.0, t100, 2000)).ok());
  // tightening the phase-rate tolerance flags the vertex ramp inside the
  // half-population band
  ValidationTolerances tight;
  tight.tol_phase_rate = per_fs_to_au(1e-6);
  ValidationReport report =
      validate(sodium, p, f, TimeGrid(0.0, t100, 2000), tight);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].constraint == Violation::Constraint::C3);
}
