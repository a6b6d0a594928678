#pragma once

namespace revfield::units {

// Conversion factors, frozen so golden values stay reproducible.
inline constexpr double ev_per_hartree = 27.211386;
inline constexpr double fs_per_au_time = 0.02418884;
inline constexpr double vm_per_au_field = 5.14221e11;
inline constexpr double mev_per_hartree = ev_per_hartree * 1e3;

enum class Unit {
  ev,
  hartree,
  mev,
  fs,
  au_time,
  v_per_m,
  au_field,
  per_fs,
  au_rate,
};

// Scales `value` between the supported unit pairs
// {eV<->hartree, meV<->hartree, fs<->a.u. time, V/m<->a.u. field,
//  fs^-1<->a.u. rate}. Throws std::invalid_argument on any other pair.
double convert_unit(double value, Unit from, Unit to);

inline double ev_to_hartree(double x) { return x / ev_per_hartree; }
inline double hartree_to_ev(double x) { return x * ev_per_hartree; }
inline double hartree_to_mev(double x) { return x * mev_per_hartree; }
inline double mev_to_hartree(double x) { return x / mev_per_hartree; }
inline double fs_to_au(double x) { return x / fs_per_au_time; }
inline double au_to_fs(double x) { return x * fs_per_au_time; }
inline double field_au_to_vm(double x) { return x * vm_per_au_field; }
inline double field_vm_to_au(double x) { return x / vm_per_au_field; }
inline double per_fs_to_au(double x) { return x * fs_per_au_time; }
inline double au_rate_to_per_fs(double x) { return x / fs_per_au_time; }

}  // namespace revfield::units
