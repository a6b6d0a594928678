#include "revfield/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace revfield {

namespace {

constexpr double amplitude_floor = 1e-12;  // phase undefined below this
constexpr std::complex<double> imag_unit{0.0, 1.0};
const double quiet_nan = std::numeric_limits<double>::quiet_NaN();

double unwrap_step(double raw, double prev) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return raw - two_pi * std::round((raw - prev) / two_pi);
}

// Unwrapped arg(c) along the samples; NaN where |c| is below the floor.
std::vector<double> unwrapped_arg(const TimeSeries& series, bool excited) {
  std::vector<double> out(series.size(), quiet_nan);
  double prev = quiet_nan;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const std::complex<double>& c =
        excited ? series.states[k].ce : series.states[k].cg;
    if (std::abs(c) <= amplitude_floor) continue;
    double raw = std::arg(c);
    out[k] = std::isnan(prev) ? raw : unwrap_step(raw, prev);
    prev = out[k];
  }
  return out;
}

}  // namespace

QuantumState init_state(double p_initial, double phi_initial) {
  if (!(p_initial >= 0.0 && p_initial <= 1.0))
    throw std::invalid_argument("init_state: population outside [0, 1]");
  double cg = std::sqrt(p_initial);
  double ce = std::sqrt(1.0 - p_initial);
  return {cg * std::exp(imag_unit * phi_initial), std::complex<double>(ce)};
}

StateDerivative rwa_derivative(const QuantumState& s,
                               std::complex<double> envelope,
                               const SystemParams& sys) {
  return {imag_unit * sys.mu * std::conj(envelope) * s.ce,
          imag_unit * sys.mu * envelope * s.cg};
}

StateDerivative full_derivative(const QuantumState& s, double t,
                                double eps_real, const SystemParams& sys) {
  std::complex<double> rot = std::exp(imag_unit * (sys.omega0 * t));
  return {imag_unit * sys.mu * eps_real * s.ce / rot,
          imag_unit * sys.mu * eps_real * s.cg * rot};
}

TimeSeries integrate(const SystemParams& sys, const FieldSource& drive,
                     const QuantumState& s0, const TimeGrid& grid) {
  const bool rwa_mode = std::holds_alternative<RwaDrive>(drive);
  const double h = grid.dt();
  if (rwa_mode) {
    if (grid.n_steps < 200) {
      std::ostringstream os;
      os << "integrate (RWA): need n_steps >= 200, i.e. step <= "
         << (grid.tf - grid.t0) / 200.0 << " a.u.; got " << grid.n_steps
         << " steps";
      throw std::invalid_argument(os.str());
    }
  } else {
    double h_max = sys.carrier_period() / 50.0;
    if (h > h_max * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "integrate (full): need step <= " << h_max
         << " a.u. (50 per carrier period); got " << h;
      throw std::invalid_argument(os.str());
    }
  }

  auto deriv = [&](double t, const QuantumState& y) -> StateDerivative {
    if (rwa_mode)
      return rwa_derivative(y, std::get<RwaDrive>(drive).envelope(t), sys);
    return full_derivative(y, t, std::get<FullDrive>(drive).field(t), sys);
  };

  TimeSeries series;
  series.times.reserve(grid.n_samples());
  series.states.reserve(grid.n_samples());
  QuantumState y = s0;
  series.times.push_back(grid.time_at(0));
  series.states.push_back(y);
  for (int k = 0; k < grid.n_steps; ++k) {
    double t = grid.time_at(k);
    StateDerivative k1 = deriv(t, y);
    StateDerivative k2 = deriv(
        t + 0.5 * h, {y.cg + 0.5 * h * k1.dcg, y.ce + 0.5 * h * k1.dce});
    StateDerivative k3 = deriv(
        t + 0.5 * h, {y.cg + 0.5 * h * k2.dcg, y.ce + 0.5 * h * k2.dce});
    StateDerivative k4 = deriv(t + h, {y.cg + h * k3.dcg, y.ce + h * k3.dce});
    y.cg += (h / 6.0) * (k1.dcg + 2.0 * k2.dcg + 2.0 * k3.dcg + k4.dcg);
    y.ce += (h / 6.0) * (k1.dce + 2.0 * k2.dce + 2.0 * k3.dce + k4.dce);
    series.times.push_back(grid.time_at(k + 1));
    series.states.push_back(y);
  }

  series.populations_g.resize(series.size());
  series.norm_residual.resize(series.size());
  for (std::size_t k = 0; k < series.size(); ++k) {
    series.populations_g[k] = series.states[k].population_g();
    series.norm_residual[k] = std::abs(series.states[k].norm_sq() - 1.0);
  }
  series.relative_phase = relative_phase_series(series);
  return series;
}

std::vector<double> relative_phase_series(const TimeSeries& series) {
  std::vector<double> out(series.size(), quiet_nan);
  double prev = quiet_nan;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const QuantumState& s = series.states[k];
    if (std::abs(s.cg) <= amplitude_floor || std::abs(s.ce) <= amplitude_floor)
      continue;
    double raw = std::arg(s.cg) - std::arg(s.ce);
    out[k] = std::isnan(prev) ? raw : unwrap_step(raw, prev);
    prev = out[k];
  }
  return out;
}

std::vector<double> phase_relation_residual(const TimeSeries& series) {
  const std::size_t n = series.size();
  std::vector<double> out(n, quiet_nan);
  if (n < 3) return out;
  std::vector<double> phi_g = unwrapped_arg(series, false);
  std::vector<double> phi_e = unwrapped_arg(series, true);

  auto rate = [&](const std::vector<double>& phi, std::size_t k) {
    const std::vector<double>& t = series.times;
    if (k == 0)
      return (-3.0 * phi[0] + 4.0 * phi[1] - phi[2]) / (t[2] - t[0]);
    if (k == n - 1)
      return (3.0 * phi[n - 1] - 4.0 * phi[n - 2] + phi[n - 3]) /
             (t[n - 1] - t[n - 3]);
    return (phi[k + 1] - phi[k - 1]) / (t[k + 1] - t[k - 1]);
  };

  for (std::size_t k = 0; k < n; ++k) {
    double ce2 = std::norm(series.states[k].ce);
    double cg2 = series.populations_g[k];
    out[k] = rate(phi_e, k) * ce2 - rate(phi_g, k) * cg2;
  }
  return out;
}

ValidationReport check_phase_relation(const TimeSeries& series, double tol) {
  std::vector<double> r = phase_relation_residual(series);
  double worst = 0.0, worst_t = 0.0;
  bool hit = false;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (std::isnan(r[k])) continue;
    if (std::abs(r[k]) > worst) {
      worst = std::abs(r[k]);
      worst_t = series.times[k];
      hit = true;
    }
  }
  ValidationReport report;
  if (hit && worst > tol)
    report.violations.push_back(
        {Violation::Constraint::CPhaseRel, worst_t, worst,
         "phase-relation residual exceeds tolerance"});
  return report;
}

}  // namespace revfield
