#include "revfield/trajectory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace revfield {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

void require_probability(double p, const char* name) {
  require(p >= 0.0 && p <= 1.0,
          std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
}

// value/d1/d2 of c * sech(s (t - tc)) + offset
TrajectorySample sech_sample(double c, double s, double tc, double offset,
                             double t) {
  double u = s * (t - tc);
  double sh = 1.0 / std::cosh(u);
  double th = std::tanh(u);
  return {c * sh + offset, -c * s * sh * th,
          c * s * s * sh * (th * th - sh * sh)};
}

// value/d1/d2 of c * tanh(u) + offset at u = arg, du/dt = s
TrajectorySample tanh_sample(double c, double s, double u, double offset) {
  double th = std::tanh(u);
  double sh = 1.0 / std::cosh(u);
  return {c * th + offset, c * s * sh * sh, -2.0 * c * s * s * sh * sh * th};
}

}  // namespace

PopulationTrajectory PopulationTrajectory::constant(double p0) {
  require_probability(p0, "P0");
  return PopulationTrajectory{pop::Constant{p0}};
}

PopulationTrajectory PopulationTrajectory::linear(double p_initial,
                                                  double p_final, double t0,
                                                  double tf) {
  require_probability(p_initial, "P_i");
  require_probability(p_final, "P_f");
  require(tf > t0, "linear population: tf must exceed t0");
  double slope = (p_final - p_initial) / (tf - t0);
  return PopulationTrajectory{
      pop::Linear{p_initial, p_final, t0, tf, slope}};
}

PopulationTrajectory PopulationTrajectory::quadratic_through_half(
    double p_initial, double p_final, double t_half, double t0, double tf) {
  require_probability(p_initial, "P_i");
  require_probability(p_final, "P_f");
  require(t0 < t_half && t_half < tf,
          "quadratic population: need t0 < t_half < tf");
  double dd01 = (0.5 - p_initial) / (t_half - t0);
  double dd12 = (p_final - 0.5) / (tf - t_half);
  double dd012 = (dd12 - dd01) / (tf - t0);
  return PopulationTrajectory{pop::QuadraticThroughHalf{
      p_initial, p_final, t0, t_half, tf, dd01, dd012}};
}

PopulationTrajectory PopulationTrajectory::tanh(double p_initial,
                                                double p_final, double alpha,
                                                double t_half) {
  require_probability(p_initial, "P_i");
  require_probability(p_final, "P_f");
  require(p_initial != p_final, "tanh population: P_i must differ from P_f");
  require(alpha > 0.0, "tanh population: alpha must be positive");
  double big_a = 0.5 * (p_final - p_initial);
  double big_b = 0.5 * (p_final + p_initial);
  double gamma = (0.5 - big_b) / big_a;
  require(std::abs(gamma) < 1.0,
          "tanh population: 1/2 is not between the asymptotes (|gamma| >= 1)");
  double beta = 0.5 * std::log((1.0 + gamma) / (1.0 - gamma)) - alpha * t_half;
  return PopulationTrajectory{
      pop::Tanh{p_initial, p_final, alpha, t_half, big_a, big_b, beta}};
}

PopulationTrajectory PopulationTrajectory::sech(double p_ends, double p_max,
                                                double xi, double t_peak) {
  require_probability(p_ends, "P_ends");
  require(p_max > 0.0 && p_max < 1.0, "sech population: need 0 < P_max < 1");
  require(p_max != 0.5, "sech population: P_max = 1/2 is not allowed");
  require(xi > 0.0, "sech population: xi must be positive");
  return PopulationTrajectory{
      pop::Sech{p_ends, p_max, xi, t_peak, p_max - p_ends, p_ends}};
}

TrajectorySample PopulationTrajectory::operator()(double t) const {
  return std::visit(
      [t](const auto& f) -> TrajectorySample {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, pop::Constant>) {
          return {f.p0, 0.0, 0.0};
        } else if constexpr (std::is_same_v<F, pop::Linear>) {
          return {f.p_initial + f.slope * (t - f.t0), f.slope, 0.0};
        } else if constexpr (std::is_same_v<F, pop::QuadraticThroughHalf>) {
          double u = t - f.t0, v = t - f.t_half;
          return {f.p_initial + f.dd01 * u + f.dd012 * u * v,
                  f.dd01 + f.dd012 * (u + v), 2.0 * f.dd012};
        } else if constexpr (std::is_same_v<F, pop::Tanh>) {
          return tanh_sample(f.big_a, f.alpha, f.alpha * t + f.beta, f.big_b);
        } else {
          return sech_sample(f.big_g, f.xi, f.t_peak, f.big_f, t);
        }
      },
      family_);
}

PopulationTrajectory::Kind PopulationTrajectory::kind() const {
  return static_cast<Kind>(family_.index());
}

PhaseTrajectory PhaseTrajectory::constant(double phi0) {
  return PhaseTrajectory{phase::Constant{phi0}};
}

PhaseTrajectory PhaseTrajectory::linear(double phi_initial, double phi_final,
                                        double t0, double tf) {
  require(tf > t0, "linear phase: tf must exceed t0");
  double slope = (phi_final - phi_initial) / (tf - t0);
  return PhaseTrajectory{
      phase::Linear{phi_initial, phi_final, t0, tf, slope}};
}

PhaseTrajectory PhaseTrajectory::quadratic_vertex(double phi_initial,
                                                  double phi_final,
                                                  double t_vertex, double t0,
                                                  double tf) {
  require(t0 < t_vertex && t_vertex < tf,
          "quadratic phase: need t0 < t_vertex < tf");
  double wf = tf - t_vertex, w0 = t0 - t_vertex;
  double denom = wf * wf - w0 * w0;
  double span = tf - t0;
  if (std::abs(denom) < 1e-12 * span * span) {
    // t_vertex at the exact midpoint: a quadratic cannot interpolate two
    // distinct endpoint values with a stationary point there.
    require(phi_initial == phi_final,
            "quadratic phase: t_vertex at the interval midpoint cannot "
            "interpolate distinct endpoint phases");
    return PhaseTrajectory{phase::QuadraticVertex{
        phi_initial, phi_final, t0, t_vertex, tf, 0.0, phi_initial}};
  }
  double a = (phi_final - phi_initial) / denom;
  double c = phi_initial - a * w0 * w0;
  return PhaseTrajectory{
      phase::QuadraticVertex{phi_initial, phi_final, t0, t_vertex, tf, a, c}};
}

PhaseTrajectory PhaseTrajectory::sech_pair(double phi_initial,
                                           double phi_final, double phi_max,
                                           double eta1, double t_join,
                                           double t0, double tf) {
  require(t0 < t_join && t_join < tf, "sech_pair phase: need t0 < t_join < tf");
  require(eta1 > 0.0, "sech_pair phase: eta1 must be positive");
  double chi1 = (phi_initial - phi_max) / (1.0 / std::cosh(eta1 * (t0 - t_join)) - 1.0);
  double chi2 = (phi_final - phi_max) / (1.0 / std::cosh(eta1 * (tf - t_join)) - 1.0);
  require(chi1 * chi2 > 0.0,
          "sech_pair phase: chi1 and chi2 must be nonzero with the same sign "
          "(Phi_max must lie strictly on one side of both endpoints)");
  double eta2 = eta1 * std::sqrt(chi1 / chi2);
  return PhaseTrajectory{phase::SechPair{phi_initial, phi_final, phi_max, eta1,
                                         eta2, t_join, t0, tf, chi1, chi2,
                                         phi_max - chi1, phi_max - chi2}};
}

PhaseTrajectory PhaseTrajectory::tanh(double phi_initial, double phi_final,
                                      double chi, double t_star) {
  require(chi > 0.0, "tanh phase: chi must be positive");
  double big_g = 0.5 * (phi_final - phi_initial);
  double big_f = 0.5 * (phi_final + phi_initial);
  return PhaseTrajectory{
      phase::Tanh{phi_initial, phi_final, chi, t_star, big_g, big_f}};
}

TrajectorySample PhaseTrajectory::operator()(double t) const {
  return std::visit(
      [t](const auto& f) -> TrajectorySample {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, phase::Constant>) {
          return {f.phi0, 0.0, 0.0};
        } else if constexpr (std::is_same_v<F, phase::Linear>) {
          return {f.phi_initial + f.slope * (t - f.t0), f.slope, 0.0};
        } else if constexpr (std::is_same_v<F, phase::QuadraticVertex>) {
          double w = t - f.t_vertex;
          return {f.a * w * w + f.c, 2.0 * f.a * w, 2.0 * f.a};
        } else if constexpr (std::is_same_v<F, phase::SechPair>) {
          if (t < f.t_join)
            return sech_sample(f.chi1, f.eta1, f.t_join, f.sigma1, t);
          return sech_sample(f.chi2, f.eta2, f.t_join, f.sigma2, t);
        } else {
          return tanh_sample(f.big_g, f.chi, f.chi * (t - f.t_star), f.big_f);
        }
      },
      family_);
}

PhaseTrajectory::Kind PhaseTrajectory::kind() const {
  return static_cast<Kind>(family_.index());
}

std::vector<double> find_half_crossings(const PopulationTrajectory& traj,
                                        const TimeGrid& grid, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("find_half_crossings: tol must be positive");
  auto f = [&traj](double t) { return traj(t).value - 0.5; };
  std::vector<double> roots;
  double fa = f(grid.time_at(0));
  for (int k = 0; k < grid.n_steps; ++k) {
    double ta = grid.time_at(k), tb = grid.time_at(k + 1);
    double fb = f(tb);
    if (fa == 0.0) {
      roots.push_back(ta);
    } else if (fa * fb < 0.0) {
      double lo = ta, hi = tb, flo = fa;
      while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (flo * fm < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    fa = fb;
  }
  if (fa == 0.0) roots.push_back(grid.time_at(grid.n_steps));
  return roots;
}

}  // namespace revfield
