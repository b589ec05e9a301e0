#pragma once

// Closed-form gate speed limits, intensity-noise tolerances and the ion-spacing bound.

#include <algorithm>
#include <cmath>
#include <string>

#include "gatelab/constants.hpp"
#include "gatelab/errors.hpp"
#include "gatelab/gates.hpp"
#include "gatelab/species.hpp"

namespace gatelab {

namespace detail {
inline void require_epsilon(double epsilon) {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
}
inline void require_recoil(double recoil_hz, int ion_count) {
  require(recoil_hz >= 0.0, "recoil frequency must be >= 0");
  require(ion_count >= 1, "ion count must be >= 1");
}
}  // namespace detail

/// Uncorrected sideband swap: 1/T_S = 4 epsilon E_R/(N h).
inline double swap_rate_uncorrected(double epsilon, double recoil_hz, int ion_count) {
  detail::require_epsilon(epsilon);
  detail::require_recoil(recoil_hz, ion_count);
  return 4.0 * epsilon * recoil_hz / ion_count;
}

/// Light-shift corrected swap: 2 sqrt(2) epsilon sqrt(E_R/(N h) * omega_z/2pi).
inline double swap_rate_corrected(double epsilon, double recoil_hz, int ion_count, double omega_z) {
  detail::require_epsilon(epsilon);
  detail::require_recoil(recoil_hz, ion_count);
  detail::require(omega_z > 0.0, "omega_z must be positive");
  return 2.0 * std::sqrt(2.0) * epsilon * std::sqrt(recoil_hz / ion_count * omega_z / constants::two_pi);
}

/// Monroe carrier gate: sqrt(2) epsilon sqrt(E_R/(N h) * omega_z/2pi), never above E_R/(N h).
inline double monroe_rate(double epsilon, double recoil_hz, int ion_count, double omega_z) {
  detail::require_epsilon(epsilon);
  detail::require_recoil(recoil_hz, ion_count);
  detail::require(omega_z > 0.0, "omega_z must be positive");
  const double n_ion_recoil = recoil_hz / ion_count;
  return std::min(std::sqrt(2.0) * epsilon * std::sqrt(n_ion_recoil * omega_z / constants::two_pi),
                  n_ion_recoil);
}

/// Largest relative Rabi-frequency fluctuation compatible with epsilon:
/// epsilon for sideband gates, eta^2 epsilon for the Monroe gate.
inline double intensity_noise_tolerance(GateKind kind, double epsilon, double eta) {
  detail::require_epsilon(epsilon);
  detail::require(eta > 0.0, "eta must be positive");
  return kind == GateKind::monroe_cx ? eta * eta * epsilon : epsilon;
}

/// Highest centre-of-mass frequency keeping the closest ions of an N-ion string at
/// least s apart: omega^2 = 8 e^2 / (4 pi eps0 M s^3 N^1.71).
inline double max_cm_frequency(double spacing_m, int ion_count, double mass_kg) {
  detail::require(spacing_m > 0.0, "spacing must be positive");
  detail::require(ion_count >= 2, "spacing bound needs at least two ions");
  detail::require(mass_kg > 0.0, "mass must be positive");
  return std::sqrt(8.0 * constants::coulomb_constant_e2 /
                   (mass_kg * spacing_m * spacing_m * spacing_m * std::pow(ion_count, 1.71)));
}

/// Fastest corrected swap rate on the breathing mode at the spacing bound (Hz):
/// 2.5 (e^2/4 pi eps0)^(1/4) epsilon sqrt(E_R/h) M^(-1/4) s^(-3/4) N^(-0.93).
inline double swap_rate_spacing_limited(double recoil_hz, double mass_kg, double epsilon, double spacing_m,
                                        double ion_exponent_n = 1.0) {
  detail::require_epsilon(epsilon);
  detail::require(recoil_hz > 0.0 && mass_kg > 0.0 && spacing_m > 0.0,
                  "recoil, mass and spacing must be positive");
  detail::require(ion_exponent_n >= 1.0, "ion count must be >= 1");
  return 2.5 * std::pow(constants::coulomb_constant_e2, 0.25) * epsilon * std::sqrt(recoil_hz) *
         std::pow(mass_kg, -0.25) * std::pow(spacing_m, -0.75) * std::pow(ion_exponent_n, -0.93);
}

/// Swap time per ion, T_S / N, using the N^-1 approximation of the N^-0.93 law.
/// The recoil is taken at a 45 degree beam angle.
inline double gate_time_per_ion(const IonSpecies& species, double epsilon, double spacing_m) {
  const double recoil_hz = recoil_frequency(species, constants::pi / 4.0);
  return 1.0 / swap_rate_spacing_limited(recoil_hz, species.mass_kg(), epsilon, spacing_m);
}

struct SpeedLimitReport {
  GateKind gate_kind = GateKind::swap;
  double epsilon_target = 0.0;
  double max_rate_hz = 0.0;
  std::string governing_formula;
  double recoil_hz = 0.0;
  int ion_count = 1;
  double omega_z = 0.0;
  double mass_kg = 0.0;
  double spacing_m = 0.0;
};

/// One report per gate family at fixed epsilon, recoil, N and omega_z.
inline std::vector<SpeedLimitReport> speed_limits(double epsilon, double recoil_hz, int ion_count,
                                                  double omega_z, double mass_kg = 0.0) {
  auto make = [&](GateKind k, double rate, const char* formula) {
    return SpeedLimitReport{k, epsilon, rate, formula, recoil_hz, ion_count, omega_z, mass_kg, 0.0};
  };
  const double uncorrected = swap_rate_uncorrected(epsilon, recoil_hz, ion_count);
  const double corrected = swap_rate_corrected(epsilon, recoil_hz, ion_count, omega_z);
  const double monroe = monroe_rate(epsilon, recoil_hz, ion_count, omega_z);
  const bool capped = monroe >= recoil_hz / ion_count;
  return {make(GateKind::swap, uncorrected, "swap_uncorrected"),
          make(GateKind::swap, corrected, "swap_corrected"),
          make(GateKind::cz_aux, corrected / 2.0, "cz_aux_corrected"),
          make(GateKind::monroe_cx, monroe, capped ? "monroe_recoil_cap" : "monroe")};
}

}  // namespace gatelab
