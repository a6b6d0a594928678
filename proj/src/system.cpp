#include "revfield/system.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "revfield/units.hpp"

namespace revfield {

double SystemParams::carrier_period() const {
  return 2.0 * std::numbers::pi / omega0;
}

SystemParams make_system(double omega0_eV, double mu_au) {
  if (!(omega0_eV > 0.0))
    throw std::invalid_argument("make_system: omega0_eV must be positive, got " +
                                std::to_string(omega0_eV));
  if (mu_au == 0.0)
    throw std::invalid_argument("make_system: mu_au must be nonzero");
  return SystemParams{units::ev_to_hartree(omega0_eV), mu_au};
}

TimeGrid::TimeGrid(double t0_, double tf_, int n_steps_)
    : t0(t0_), tf(tf_), n_steps(n_steps_) {
  if (!(tf > t0))
    throw std::invalid_argument("TimeGrid: tf must exceed t0");
  if (n_steps < 2)
    throw std::invalid_argument("TimeGrid: n_steps must be at least 2");
}

double TimeGrid::time_at(int k) const {
  if (k <= 0) return t0;
  if (k >= n_steps) return tf;
  return t0 + dt() * k;
}

}  // namespace revfield
