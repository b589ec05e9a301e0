#pragma once

// Flat INI scenario files: one [scenario] section and an optional [sweep] section.
// Every frequency key carries its unit (_hz or _khz, cyclic); values are converted
// to rad/s on parse.

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "gatelab/constants.hpp"
#include "gatelab/dynamics.hpp"
#include "gatelab/errors.hpp"
#include "gatelab/gates.hpp"
#include "gatelab/species.hpp"
#include "gatelab/thermal.hpp"

namespace gatelab {

using Ptree = boost::property_tree::ptree;

struct SweepAxis {
  std::string key;  // any numeric [scenario] key
  double from = 0.0;
  double to = 0.0;
  int steps = 1;

  double value(int i) const { return steps == 1 ? from : from + (to - from) * i / (steps - 1); }
};

struct ScenarioConfig {
  Ptree source;  // the [scenario] section as read, for sweep overrides
  std::string species_name = "Ca-729";
  IonSpecies species;
  TrapConfig trap;
  double eta_z = 0.0;
  GateSpec gate;
  Sideband sideband = Sideband::red;
  int monroe_m = 2;
  PulseSpec pulse;
  int n_max = 3;
  Internal initial_internal = Internal::ground;
  int initial_n = 0;
  std::vector<double> times;  // seconds
  std::vector<ThermalMode> spectators;
  double tail_mass = 1e-4;
  std::vector<SweepAxis> sweep;

  ThermalScenario thermal() const {
    ThermalScenario s;
    s.name = "config";
    s.eta_z = eta_z;
    s.omega_z = trap.logic_mode_frequency();
    s.rabi = pulse.rabi;
    s.detuning = pulse.detuning;
    s.transition = gate.transition.kind;
    s.n_max = n_max;
    s.initial_internal = initial_internal;
    s.initial_n = initial_n;
    s.spectators = spectators;
    s.tail_mass = tail_mass;
    return s;
  }
};

namespace detail {

inline const std::set<std::string>& scenario_keys() {
  static const std::set<std::string> keys = {
      "species", "species_file", "gate", "sideband", "monroe_m",
      "eta_x", "eta_y", "eta_z", "nbar_x", "nbar_y", "ion_count", "mode",
      "omega_x_hz", "omega_x_khz", "omega_y_hz", "omega_y_khz", "omega_z_hz", "omega_z_khz",
      "beam_angle_x_deg", "beam_angle_y_deg", "beam_angle_z_deg",
      "rabi_hz", "rabi_khz", "rabi_over_omega_z",
      "detuning_hz", "detuning_khz", "detuning_offset_hz", "detuning_offset_khz",
      "corrected", "light_shift", "phase_rad", "duration_us", "duration_scale",
      "n_max", "initial", "t_end_us", "time_points", "tail_mass"};
  return keys;
}

inline const std::set<std::string>& frequency_stems() {
  static const std::set<std::string> stems = {"omega_x", "omega_y", "omega_z", "rabi", "detuning",
                                              "detuning_offset"};
  return stems;
}

template <class T>
T get_value(const Ptree& p, const std::string& key) {
  try {
    return p.get<T>(key);
  } catch (const boost::property_tree::ptree_error&) {
    throw ValidationError("scenario: bad value for '" + key + "': '" + p.get<std::string>(key, "") + "'");
  }
}

template <class T>
std::optional<T> find_value(const Ptree& p, const std::string& key) {
  if (!p.get_child_optional(key)) return std::nullopt;
  return get_value<T>(p, key);
}

/// Frequency in rad/s from `<stem>_hz` or `<stem>_khz`; both present is an error.
inline std::optional<double> find_frequency(const Ptree& p, const std::string& stem) {
  const auto hz = find_value<double>(p, stem + "_hz");
  const auto khz = find_value<double>(p, stem + "_khz");
  require(!(hz && khz), "scenario: both " + stem + "_hz and " + stem + "_khz given");
  if (hz) return constants::two_pi * *hz;
  if (khz) return constants::two_pi * 1e3 * *khz;
  return std::nullopt;
}

inline bool parse_bool(const Ptree& p, const std::string& key, bool fallback) {
  const auto v = find_value<std::string>(p, key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ValidationError("scenario: '" + key + "' must be true or false");
}

inline LightShiftModel parse_light_shift(const std::string& v) {
  if (v == "none") return LightShiftModel::none;
  if (v == "analytic") return LightShiftModel::analytic;
  if (v == "numeric") return LightShiftModel::numeric;
  throw ValidationError("scenario: light_shift must be none, analytic or numeric");
}

inline std::pair<Internal, int> parse_state_label(const std::string& v) {
  require(v.size() >= 2 && (v[0] == 'g' || v[0] == 'e'), "scenario: initial must look like g0 or e1");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(v.substr(1), &used);
    require(used == v.size() - 1, "scenario: initial must look like g0 or e1");
  } catch (const std::logic_error&) {
    throw ValidationError("scenario: initial must look like g0 or e1");
  }
  return {v[0] == 'g' ? Internal::ground : Internal::excited, n};
}

inline void check_keys(const Ptree& section) {
  for (const auto& [key, value] : section) {
    if (scenario_keys().count(key)) continue;
    if (frequency_stems().count(key))
      throw ValidationError("scenario: frequency key '" + key + "' needs a unit suffix (_hz or _khz)");
    throw ValidationError("scenario: unknown key '" + key + "'");
  }
}

}  // namespace detail

/// Resolve a [scenario] section into simulation inputs. `base_dir` anchors relative paths.
inline ScenarioConfig parse_scenario(const Ptree& section, const std::filesystem::path& base_dir = {}) {
  using namespace detail;
  check_keys(section);
  ScenarioConfig c;
  c.source = section;

  SpeciesRegistry registry;
  if (auto f = find_value<std::string>(section, "species_file")) {
    std::filesystem::path path(*f);
    if (path.is_relative()) path = base_dir / path;
    registry.load_file(path);
  }
  c.species_name = section.get<std::string>("species", "Ca-729");
  c.species = registry.get(c.species_name);

  const double khz = constants::two_pi * 1e3;
  c.trap.omega_z = find_frequency(section, "omega_z").value_or(1850.0 * khz);
  c.trap.omega_x = find_frequency(section, "omega_x").value_or(4000.0 * khz);
  c.trap.omega_y = find_frequency(section, "omega_y").value_or(1925.0 * khz);
  c.trap.ion_count = find_value<int>(section, "ion_count").value_or(1);
  const double deg = constants::pi / 180.0;
  c.trap.beam_angles = {find_value<double>(section, "beam_angle_x_deg").value_or(40.0) * deg,
                        find_value<double>(section, "beam_angle_y_deg").value_or(90.0) * deg,
                        find_value<double>(section, "beam_angle_z_deg").value_or(50.0) * deg};
  if (auto m = find_value<std::string>(section, "mode")) c.trap.mode_choice = parse_mode_choice(*m);
  c.trap.validate();
  const double omega_z = c.trap.logic_mode_frequency();

  c.sideband = parse_sideband(section.get<std::string>("sideband", "red"));
  c.monroe_m = find_value<int>(section, "monroe_m").value_or(2);
  const GateKind kind = parse_gate_kind(section.get<std::string>("gate", "SWAP"));
  switch (kind) {
    case GateKind::swap: c.gate = GateSpec::swap(c.sideband); break;
    case GateKind::cz_aux: c.gate = GateSpec::cz_aux(c.sideband); break;
    case GateKind::monroe_cx: c.gate = GateSpec::monroe(c.monroe_m); break;
    case GateKind::identity: c.gate = GateSpec::identity(); break;
  }

  const LambDickeSet ld = lamb_dicke(c.species, c.trap);
  if (auto e = find_value<double>(section, "eta_z")) {
    c.eta_z = *e;
  } else if (kind == GateKind::monroe_cx) {
    c.eta_z = 1.0 / std::sqrt(2.0 * c.monroe_m);
  } else {
    c.eta_z = ld.eta_z;
  }
  require(c.eta_z >= 0.0, "scenario: eta_z must be >= 0");

  // Pulse: rabi, then the gate's default detuning and duration, then explicit overrides.
  const auto rabi = find_frequency(section, "rabi");
  const auto ratio = find_value<double>(section, "rabi_over_omega_z");
  require(!(rabi && ratio), "scenario: give either rabi_* or rabi_over_omega_z, not both");
  require(rabi || ratio, "scenario: missing Rabi frequency (rabi_hz, rabi_khz or rabi_over_omega_z)");
  c.pulse.rabi = rabi ? *rabi : *ratio * omega_z;
  c.pulse.phase = find_value<double>(section, "phase_rad").value_or(0.0);
  require(c.pulse.rabi >= 0.0, "scenario: Rabi frequency must be >= 0");

  const bool corrected = parse_bool(section, "corrected", false);
  const LightShiftModel model = parse_light_shift(section.get<std::string>("light_shift", "analytic"));
  c.n_max = find_value<int>(section, "n_max").value_or(3);
  SystemBasis{c.n_max}.validate();
  require(c.n_max >= 1, "scenario: n_max must be >= 1");
  if (c.pulse.rabi > 0.0) {
    if (kind == GateKind::swap || kind == GateKind::cz_aux) {
      require(c.eta_z > 0.0, "scenario: sideband gates need eta_z > 0");
      const PulseSpec p = kind == GateKind::swap
                              ? swap_pulse(c.eta_z, c.pulse.rabi, omega_z, corrected, c.sideband, model, c.n_max)
                              : cz_aux_pulse(c.eta_z, c.pulse.rabi, omega_z, corrected, c.sideband, model,
                                             c.n_max);
      c.pulse.detuning = p.detuning;
      c.pulse.duration = p.duration;
    } else if (kind == GateKind::monroe_cx) {
      c.pulse.duration = monroe_pulse(c.monroe_m, c.pulse.rabi).pulse.duration;
    } else {
      c.pulse.duration = constants::two_pi / c.pulse.rabi;
    }
  }
  const auto detuning = find_frequency(section, "detuning");
  const auto offset = find_frequency(section, "detuning_offset");
  require(!(detuning && offset), "scenario: give either detuning_* or detuning_offset_*, not both");
  if (detuning) c.pulse.detuning = *detuning;
  if (offset) c.pulse.detuning = c.gate.transition.bare_detuning(omega_z) + *offset;
  if (auto d = find_value<double>(section, "duration_us")) c.pulse.duration = *d * 1e-6;
  if (auto s = find_value<double>(section, "duration_scale")) {
    require(*s >= 0.0, "scenario: duration_scale must be >= 0");
    c.pulse.duration *= *s;
  }
  c.pulse.validate();

  std::tie(c.initial_internal, c.initial_n) = parse_state_label(section.get<std::string>("initial", "g0"));
  require(c.initial_n <= c.n_max, "scenario: initial Fock level outside basis");

  const int points = find_value<int>(section, "time_points").value_or(201);
  const double t_end = find_value<double>(section, "t_end_us").value_or(c.pulse.duration * 2e6) * 1e-6;
  require(points >= 2, "scenario: time_points must be >= 2");
  require(std::isfinite(t_end) && t_end > 0.0, "scenario: t_end_us must be positive");
  c.times = time_grid(t_end, points);

  if (auto nb = find_value<double>(section, "nbar_x"))
    c.spectators.push_back({"x", find_value<double>(section, "eta_x").value_or(ld.eta_x), c.trap.omega_x, *nb});
  if (auto nb = find_value<double>(section, "nbar_y"))
    c.spectators.push_back({"y", find_value<double>(section, "eta_y").value_or(ld.eta_y), c.trap.omega_y, *nb});
  for (const auto& m : c.spectators) m.validate();
  c.tail_mass = find_value<double>(section, "tail_mass").value_or(1e-4);
  require(c.tail_mass > 0.0 && c.tail_mass < 1.0, "scenario: tail_mass must lie in (0, 1)");
  return c;
}

/// [sweep] section: axis1 / axis1_from / axis1_to / axis1_steps, optional axis2_*.
inline std::vector<SweepAxis> parse_sweep(const Ptree& section) {
  std::vector<SweepAxis> axes;
  for (const std::string prefix : {"axis1", "axis2"}) {
    const auto key = section.get_optional<std::string>(prefix);
    if (!key) continue;
    detail::require(detail::scenario_keys().count(*key) != 0, "sweep: unknown axis key '" + *key + "'");
    SweepAxis a;
    a.key = *key;
    a.from = detail::get_value<double>(section, prefix + "_from");
    a.to = detail::get_value<double>(section, prefix + "_to");
    a.steps = detail::get_value<int>(section, prefix + "_steps");
    detail::require(a.steps >= 1, "sweep: " + prefix + "_steps must be >= 1");
    detail::require(a.steps == 1 || a.to != a.from, "sweep: " + prefix + " range is empty");
    axes.push_back(a);
  }
  for (const auto& [key, value] : section) {
    const bool known = key.rfind("axis1", 0) == 0 || key.rfind("axis2", 0) == 0;
    detail::require(known, "sweep: unknown key '" + key + "'");
  }
  detail::require(!axes.empty(), "sweep: no axes defined");
  return axes;
}

inline ScenarioConfig load_scenario(const std::filesystem::path& path) {
  Ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ValidationError(std::string("scenario file: ") + e.what());
  }
  for (const auto& [name, body] : tree)
    detail::require(name == "scenario" || name == "sweep", "scenario file: unknown section [" + name + "]");
  const auto section = tree.get_child_optional("scenario");
  detail::require(section.has_value(), "scenario file: missing [scenario] section");
  ScenarioConfig c = parse_scenario(*section, path.parent_path());
  if (auto sweep = tree.get_child_optional("sweep")) c.sweep = parse_sweep(*sweep);
  return c;
}

/// The scenario with one key replaced, re-resolved from scratch.
inline ScenarioConfig with_override(const ScenarioConfig& base, const std::string& key, double value,
                                    const std::filesystem::path& base_dir = {}) {
  static const std::vector<std::vector<std::string>> groups = {
      {"rabi_hz", "rabi_khz", "rabi_over_omega_z"},
      {"detuning_hz", "detuning_khz", "detuning_offset_hz", "detuning_offset_khz"},
      {"omega_x_hz", "omega_x_khz"}, {"omega_y_hz", "omega_y_khz"}, {"omega_z_hz", "omega_z_khz"}};
  Ptree section = base.source;
  for (const auto& g : groups)
    if (std::find(g.begin(), g.end(), key) != g.end())
      for (const auto& sibling : g) section.erase(sibling);
  section.put(key, value);
  ScenarioConfig c = parse_scenario(section, base_dir);
  c.sweep = base.sweep;
  return c;
}

}  // namespace gatelab
