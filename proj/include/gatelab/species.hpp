#pragma once

// Ion species, trap geometry and the Lamb-Dicke parameters they imply.

#include <array>
#include <cmath>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "gatelab/constants.hpp"
#include "gatelab/errors.hpp"

namespace gatelab {

struct IonSpecies {
  std::string name;
  double mass_u = 0.0;        // atomic mass units
  double wavelength_m = 0.0;  // transition (or Raman beam) wavelength
  int photon_factor = 1;      // 1 = single photon, 2 = counter-propagating Raman

  double mass_kg() const { return mass_u * constants::atomic_mass_unit; }

  void validate() const {
    detail::require(mass_u > 0.0, "species '" + name + "': mass must be positive");
    detail::require(wavelength_m > 0.0, "species '" + name + "': wavelength must be positive");
    detail::require(photon_factor == 1 || photon_factor == 2,
                    "species '" + name + "': photon_factor must be 1 or 2");
  }
};

/// Which axial normal mode carries the logic.
enum class ModeChoice { center_of_mass, breathing, third };

inline ModeChoice parse_mode_choice(std::string_view text) {
  if (text == "com" || text == "center_of_mass" || text == "cm") return ModeChoice::center_of_mass;
  if (text == "breathing" || text == "second") return ModeChoice::breathing;
  if (text == "third") return ModeChoice::third;
  throw ValidationError("unknown mode choice '" + std::string(text) + "'");
}

/// Axial mode frequency relative to the centre-of-mass mode: 1, sqrt(3), sqrt(29/5).
inline double mode_frequency(double omega_cm, ModeChoice choice) {
  detail::require(omega_cm > 0.0, "mode_frequency: centre-of-mass frequency must be positive");
  switch (choice) {
    case ModeChoice::center_of_mass: return omega_cm;
    case ModeChoice::breathing: return std::sqrt(3.0) * omega_cm;
    case ModeChoice::third: return std::sqrt(29.0 / 5.0) * omega_cm;
  }
  throw ValidationError("mode_frequency: invalid mode choice");
}

struct TrapConfig {
  // Angular frequencies (rad/s). omega_z is the centre-of-mass axial frequency;
  // mode_choice selects which axial mode is used for logic.
  double omega_x = 0.0;
  double omega_y = 0.0;
  double omega_z = 0.0;
  int ion_count = 1;
  // Angles (rad) between the effective wavevector and the x, y, z axes.
  std::array<double, 3> beam_angles{constants::pi / 2, constants::pi / 2, 0.0};
  ModeChoice mode_choice = ModeChoice::center_of_mass;

  double logic_mode_frequency() const { return mode_frequency(omega_z, mode_choice); }

  void validate() const {
    detail::require(omega_x > 0.0 && omega_y > 0.0 && omega_z > 0.0,
                    "trap: all mode frequencies must be positive");
    detail::require(ion_count >= 1, "trap: ion_count must be >= 1");
    double cos_sq = 0.0;
    for (double a : beam_angles) {
      detail::require(a >= 0.0 && a <= constants::pi, "trap: beam angles must lie in [0, pi]");
      cos_sq += std::cos(a) * std::cos(a);
    }
    detail::require(cos_sq <= 1.0 + 1e-9,
                    "trap: direction cosines of the beam angles exceed unit norm");
  }
};

struct LambDickeSet {
  double eta_x = 0.0;
  double eta_y = 0.0;
  double eta_z = 0.0;

  /// True when any eta >= 1; the perturbative picture no longer applies, results are still computed.
  bool outside_lamb_dicke_regime() const { return eta_x >= 1.0 || eta_y >= 1.0 || eta_z >= 1.0; }
};

/// Single-ion recoil energy E_R = (r hbar k cos(angle))^2 / (2M), returned as E_R/h in Hz.
inline double recoil_frequency(const IonSpecies& species, double angle_to_axis) {
  species.validate();
  detail::require(angle_to_axis >= 0.0 && angle_to_axis <= constants::pi,
                  "recoil_frequency: angle must lie in [0, pi]");
  const double c = std::cos(angle_to_axis);
  const double r = species.photon_factor;
  return r * r * constants::planck * c * c /
         (2.0 * species.mass_kg() * species.wavelength_m * species.wavelength_m);
}

/// eta for one mode: sqrt(E_R / (hbar omega)) / sqrt(N).
inline double lamb_dicke_single(double recoil_hz, double omega, int ion_count) {
  detail::require(omega > 0.0, "lamb_dicke: mode frequency must be positive");
  detail::require(ion_count >= 1, "lamb_dicke: ion_count must be >= 1");
  return std::sqrt(constants::two_pi * recoil_hz / omega / ion_count);
}

inline LambDickeSet lamb_dicke(const IonSpecies& species, const TrapConfig& trap) {
  trap.validate();
  LambDickeSet out;
  out.eta_x = lamb_dicke_single(recoil_frequency(species, trap.beam_angles[0]), trap.omega_x,
                                trap.ion_count);
  out.eta_y = lamb_dicke_single(recoil_frequency(species, trap.beam_angles[1]), trap.omega_y,
                                trap.ion_count);
  out.eta_z = lamb_dicke_single(recoil_frequency(species, trap.beam_angles[2]),
                                trap.logic_mode_frequency(), trap.ion_count);
  return out;
}

/// Named species, seeded with the three standard qubit transitions.
class SpeciesRegistry {
 public:
  SpeciesRegistry() {
    add({"Be-313", 9.0, 313e-9, 2});
    add({"Ca-397", 40.0, 397e-9, 2});
    add({"Ca-729", 40.0, 729e-9, 1});
  }

  void add(IonSpecies species) {
    species.validate();
    const std::string key = species.name;
    entries_[key] = std::move(species);
  }

  bool contains(const std::string& name) const { return entries_.count(name) != 0; }

  const IonSpecies& get(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw ValidationError("unknown species '" + name + "'");
    return it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
  }

  /// Merge species from an INI file; each section is one species:
  ///   [Sr-674]
  ///   mass_u = 88
  ///   wavelength_nm = 674
  ///   photon_factor = 1
  void load_file(const std::filesystem::path& path) {
    boost::property_tree::ptree tree;
    try {
      boost::property_tree::ini_parser::read_ini(path.string(), tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ValidationError(std::string("species file: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
      if (body.empty()) continue;
      IonSpecies s;
      s.name = section;
      try {
        s.mass_u = body.get<double>("mass_u");
        s.wavelength_m = body.get<double>("wavelength_nm") * 1e-9;
        s.photon_factor = body.get<int>("photon_factor", 1);
      } catch (const boost::property_tree::ptree_error& e) {
        throw ValidationError("species '" + section + "': " + e.what());
      }
      add(std::move(s));
    }
  }

 private:
  std::map<std::string, IonSpecies> entries_;
};

}  // namespace gatelab
