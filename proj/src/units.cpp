#include "revfield/units.hpp"

#include <stdexcept>
#include <string>

namespace revfield::units {

namespace {

const char* unit_name(Unit u) {
  switch (u) {
    case Unit::ev: return "eV";
    case Unit::hartree: return "hartree";
    case Unit::mev: return "meV";
    case Unit::fs: return "fs";
    case Unit::au_time: return "a.u. time";
    case Unit::v_per_m: return "V/m";
    case Unit::au_field: return "a.u. field";
    case Unit::per_fs: return "fs^-1";
    case Unit::au_rate: return "a.u. rate";
  }
  return "?";
}

}  // namespace

double convert_unit(double value, Unit from, Unit to) {
  if (from == to) return value;
  if (from == Unit::ev && to == Unit::hartree) return ev_to_hartree(value);
  if (from == Unit::hartree && to == Unit::ev) return hartree_to_ev(value);
  if (from == Unit::mev && to == Unit::hartree) return mev_to_hartree(value);
  if (from == Unit::hartree && to == Unit::mev) return hartree_to_mev(value);
  if (from == Unit::fs && to == Unit::au_time) return fs_to_au(value);
  if (from == Unit::au_time && to == Unit::fs) return au_to_fs(value);
  if (from == Unit::v_per_m && to == Unit::au_field)
    return field_vm_to_au(value);
  if (from == Unit::au_field && to == Unit::v_per_m)
    return field_au_to_vm(value);
  if (from == Unit::per_fs && to == Unit::au_rate) return per_fs_to_au(value);
  if (from == Unit::au_rate && to == Unit::per_fs)
    return au_rate_to_per_fs(value);
  throw std::invalid_argument(std::string("unsupported unit conversion: ") +
                              unit_name(from) + " -> " + unit_name(to));
}

}  // namespace revfield::units
