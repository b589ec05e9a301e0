#pragma once

// Thermal averaging over spectator vibrational modes. Spectators are not dynamical:
// each occupation tuple rescales the Rabi frequency and shifts the resonance, and
// the resulting populations are averaged with thermal weights.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/laguerre.hpp>
#include <boost/math/tools/minima.hpp>

#include "gatelab/constants.hpp"
#include "gatelab/dynamics.hpp"
#include "gatelab/errors.hpp"
#include "gatelab/gates.hpp"

namespace gatelab {

struct ThermalMode {
  std::string name;
  double eta = 0.0;
  double omega = 0.0;  // rad/s
  double mean_occupation = 0.0;

  void validate() const {
    detail::require(eta >= 0.0, "thermal mode '" + name + "': eta must be >= 0");
    detail::require(omega > 0.0, "thermal mode '" + name + "': frequency must be positive");
    detail::require(mean_occupation >= 0.0, "thermal mode '" + name + "': mean occupation must be >= 0");
  }
};

struct OccupationDistribution {
  std::vector<double> probabilities;  // p(n), n = 0..n_cut

  int n_cut() const { return static_cast<int>(probabilities.size()) - 1; }
  double mean() const {
    double m = 0.0;
    for (std::size_t n = 0; n < probabilities.size(); ++n) m += n * probabilities[n];
    return m;
  }
};

namespace detail {

/// p(n) = nbar^n / (nbar+1)^(n+1) for n = 0..n_cut, where n_cut is the smallest
/// level whose tail mass beyond it is below `tail`. Not renormalized.
inline std::vector<double> geometric_weights(double n_bar, double tail) {
  require(n_bar >= 0.0 && std::isfinite(n_bar), "thermal_weights: mean occupation must be >= 0");
  require(tail > 0.0 && tail < 1.0, "thermal_weights: cutoff must lie in (0, 1)");
  const double q = n_bar / (n_bar + 1.0);
  std::vector<double> p;
  double pn = 1.0 / (n_bar + 1.0);
  double remaining = 1.0;  // mass of levels >= n, equals q^n
  while (remaining >= tail) {
    p.push_back(pn);
    remaining *= q;
    pn *= q;
    require(p.size() < 1000000, "thermal_weights: occupation too large for cutoff");
  }
  return p;
}

}  // namespace detail

/// Thermal occupation truncated where the tail mass drops below `mass_cutoff`, renormalized.
inline OccupationDistribution thermal_weights(double n_bar, double mass_cutoff = 1e-4) {
  std::vector<double> p = detail::geometric_weights(n_bar, mass_cutoff);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= total;
  return {std::move(p)};
}

enum class RabiScaling { first_order, exact };

/// Spectator factor for one mode: 1 - n eta^2, or the exact diagonal element
/// C_nn(eta) = L_n(eta^2).
inline double spectator_factor(int n, double eta, RabiScaling mode) {
  detail::require(n >= 0, "spectator occupation must be >= 0");
  detail::require(eta >= 0.0, "spectator eta must be >= 0");
  if (mode == RabiScaling::exact) return boost::math::laguerre(static_cast<unsigned>(n), eta * eta);
  return 1.0 - n * eta * eta;
}

/// (1 - n_x eta_x^2)(1 - n_y eta_y^2) * base_coupling.
inline Complex scaled_rabi(int n_x, int n_y, double eta_x, double eta_y, Complex base_coupling,
                           RabiScaling mode = RabiScaling::first_order) {
  const double fx = spectator_factor(n_x, eta_x, mode);
  const double fy = spectator_factor(n_y, eta_y, mode);
  if (mode == RabiScaling::first_order && (fx <= 0.0 || fy <= 0.0))
    throw ValidationError("scaled_rabi: first-order factor is <= 0 (n eta^2 >= 1); use exact scaling");
  return fx * fy * base_coupling;
}

/// (eta Omega)^2 (n + 1) / (2 gap): shift of a sideband resonance from the sideband of a
/// spectator mode detuned by `omega_gap` from the logic mode. A warning is appended when
/// |gap| < 1e-3 omega_z, where the perturbative form breaks down.
inline double spectator_light_shift(int n, double eta, double rabi, double omega_gap, double omega_z = 0.0,
                                    std::vector<std::string>* warnings = nullptr) {
  detail::require(omega_gap != 0.0, "spectator_light_shift: zero mode gap");
  detail::require(n >= 0 && eta >= 0.0 && rabi >= 0.0, "spectator_light_shift: negative input");
  if (warnings && omega_z > 0.0 && std::abs(omega_gap) < 1e-3 * omega_z)
    warnings->push_back("spectator mode nearly degenerate with the logic mode; light-shift formula invalid");
  const double x = eta * rabi;
  return x * x * (n + 1.0) / (2.0 * omega_gap);
}

/// Logic-mode simulation plus the spectators that blur it.
struct ThermalScenario {
  std::string name;
  double eta_z = 0.045;
  double omega_z = constants::two_pi * 1850e3;
  double rabi = 0.0;      // carrier Rabi frequency Omega
  double detuning = 0.0;  // absolute laser detuning delta from the carrier
  TransitionKind transition = TransitionKind::carrier;
  int n_max = 1;
  Internal initial_internal = Internal::ground;
  int initial_n = 0;
  std::vector<ThermalMode> spectators;
  RabiScaling scaling = RabiScaling::first_order;
  double tail_mass = 1e-4;

  void validate() const {
    detail::require(eta_z >= 0.0, "scenario: eta_z must be >= 0");
    detail::require(omega_z > 0.0, "scenario: omega_z must be positive");
    detail::require(rabi >= 0.0, "scenario: Rabi frequency must be >= 0");
    detail::require(initial_n >= 0 && initial_n <= n_max, "scenario: initial Fock level outside basis");
    SystemBasis{n_max}.validate();
    for (const auto& m : spectators) m.validate();
  }

  /// Rabi frequency of the driven transition, sets the natural pi time.
  double transition_rabi() const {
    if (transition == TransitionKind::carrier) return rabi;
    return rabi * eta_z;
  }
  double pi_time() const {
    detail::require(transition_rabi() > 0.0, "scenario: pi time undefined at zero Rabi frequency");
    return constants::pi / transition_rabi();
  }
};

struct OccupationTuple {
  std::vector<int> n;
  double weight = 0.0;
};

/// Joint occupations of all spectators, in decreasing probability, kept until the
/// dropped mass is below `tail_mass`; weights renormalized. Ties keep lexicographic order.
inline std::vector<OccupationTuple> joint_occupations(const std::vector<ThermalMode>& modes,
                                                      double tail_mass) {
  detail::require(tail_mass > 0.0 && tail_mass < 1.0, "tail mass must lie in (0, 1)");
  if (modes.empty()) return {{{}, 1.0}};
  const double per_mode = tail_mass / (2.0 * modes.size());
  std::vector<std::vector<double>> w;
  for (const auto& m : modes) w.push_back(detail::geometric_weights(m.mean_occupation, per_mode));
  std::vector<OccupationTuple> all{{{}, 1.0}};
  for (const auto& wm : w) {
    std::vector<OccupationTuple> next;
    next.reserve(all.size() * wm.size());
    for (const auto& t : all)
      for (std::size_t n = 0; n < wm.size(); ++n) {
        OccupationTuple u = t;
        u.n.push_back(static_cast<int>(n));
        u.weight *= wm[n];
        next.push_back(std::move(u));
      }
    all = std::move(next);
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& a, const auto& b) { return a.weight > b.weight; });
  double kept = 0.0;
  std::size_t count = 0;
  while (count < all.size() && kept < 1.0 - tail_mass) kept += all[count++].weight;
  all.resize(count);
  for (auto& t : all) t.weight /= kept;
  return all;
}

/// Effective pulse for one spectator occupation tuple.
inline PulseSpec occupation_pulse(const ThermalScenario& s, const std::vector<int>& n,
                                  std::vector<std::string>* warnings = nullptr) {
  double factor = 1.0;
  double shift = 0.0;
  for (std::size_t k = 0; k < s.spectators.size(); ++k) {
    const ThermalMode& m = s.spectators[k];
    factor *= spectator_factor(n[k], m.eta, s.scaling);
    if (s.transition != TransitionKind::carrier)
      shift += spectator_light_shift(n[k], m.eta, s.rabi, m.omega - s.omega_z, s.omega_z, warnings);
  }
  if (s.scaling == RabiScaling::first_order && factor <= 0.0)
    throw ValidationError("scenario '" + s.name +
                          "': first-order Rabi scaling is <= 0 for a populated occupation; use exact scaling");
  // Carrier resonances are shifted symmetrically by the upper and lower spectator sidebands.
  double detuning = s.detuning;
  if (s.transition == TransitionKind::blue_sideband) detuning -= shift;
  if (s.transition == TransitionKind::red_sideband) detuning += shift;
  return {s.rabi * std::abs(factor), detuning, factor < 0.0 ? constants::pi : 0.0, 0.0};
}

/// Weighted set of independent logic-mode simulations.
class ThermalEnsemble {
 public:
  explicit ThermalEnsemble(const ThermalScenario& s) : basis_{s.n_max} {
    s.validate();
    const Eigen::VectorXcd initial = basis_.state(s.initial_internal, s.initial_n);
    for (const auto& t : joint_occupations(s.spectators, s.tail_mass)) {
      const PulseSpec p = occupation_pulse(s, t.n, &warnings_);
      RotatingHamiltonian h = build_hamiltonian(s.eta_z, s.omega_z, p, basis_);
      Eigen::VectorXcd coeffs = h.eigenvectors().adjoint() * initial;
      members_.push_back({t.weight, std::move(h), std::move(coeffs)});
    }
    std::sort(warnings_.begin(), warnings_.end());
    warnings_.erase(std::unique(warnings_.begin(), warnings_.end()), warnings_.end());
  }

  std::size_t size() const { return members_.size(); }
  const SystemBasis& basis() const { return basis_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Averaged basis-state probabilities at time t; summed in fixed member order.
  Eigen::VectorXd probabilities(double t) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(basis_.dimension());
    Eigen::VectorXcd phased(basis_.dimension());
    for (const auto& m : members_) {
      for (int k = 0; k < basis_.dimension(); ++k)
        phased(k) = m.coeffs(k) * std::exp(Complex(0.0, -m.h.eigenvalues()(k) * t));
      out += m.weight * (m.h.eigenvectors() * phased).cwiseAbs2();
    }
    return out;
  }

  double excited_population(double t) const {
    return probabilities(t).segment(basis_.levels(), basis_.levels()).sum();
  }

  PopulationTrace trace(std::span<const double> times) const {
    for (std::size_t i = 0; i < times.size(); ++i) {
      detail::require(times[i] >= 0.0, "thermal trace: times must be non-negative");
      if (i > 0) detail::require(times[i] >= times[i - 1], "thermal trace: times must be sorted");
    }
    PopulationTrace out{std::vector<double>(times.begin(), times.end()),
                        Eigen::MatrixXd(static_cast<Eigen::Index>(times.size()), basis_.dimension()), basis_};
    for (std::size_t i = 0; i < times.size(); ++i)
      out.probabilities.row(static_cast<Eigen::Index>(i)) = probabilities(times[i]).transpose();
    return out;
  }

 private:
  struct Member {
    double weight;
    RotatingHamiltonian h;
    Eigen::VectorXcd coeffs;
  };
  SystemBasis basis_;
  std::vector<Member> members_;
  std::vector<std::string> warnings_;
};

inline PopulationTrace thermal_average_trace(const ThermalScenario& s, std::span<const double> times) {
  return ThermalEnsemble(s).trace(times);
}

/// Evenly spaced times on [0, t_end].
inline std::vector<double> time_grid(double t_end, int points) {
  detail::require(points >= 2, "time grid needs at least two points");
  detail::require(t_end > 0.0, "time grid end must be positive");
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = t_end * i / (points - 1);
  return t;
}

struct ContrastSummary {
  double pi_time = 0.0;            // nominal pi time of the driven transition
  double pi_contrast = 0.0;        // peak excited population within [0.5, 1.5] T_pi
  double pi_peak_time = 0.0;
  double two_pi_contrast = 0.0;    // pi peak minus trough within [1.5, 2.5] T_pi
  double two_pi_trough_time = 0.0;
};

namespace detail {

/// Extremum of f on [lo, hi]: dense scan then Brent around the best sample.
inline std::pair<double, double> window_extremum(const std::function<double(double)>& f, double lo, double hi,
                                                 bool maximize, int samples = 400) {
  const double sign = maximize ? -1.0 : 1.0;
  double best_t = lo, best_v = std::numeric_limits<double>::infinity();
  const double h = (hi - lo) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double t = lo + h * i;
    const double v = sign * f(t);
    if (v < best_v) { best_v = v; best_t = t; }
  }
  std::uintmax_t iters = 100;
  auto g = [&](double t) { return sign * f(t); };
  const auto [t, v] = boost::math::tools::brent_find_minima(g, std::max(lo, best_t - h),
                                                            std::min(hi, best_t + h), 50, iters);
  if (v < best_v) { best_v = v; best_t = t; }
  return {best_t, sign * best_v};
}

}  // namespace detail

/// Experimental-style contrast of the averaged excited-state population.
inline ContrastSummary contrast_summary(const ThermalEnsemble& e, double pi_time) {
  detail::require(pi_time > 0.0, "contrast: pi time must be positive");
  auto pe = [&](double t) { return e.excited_population(t); };
  ContrastSummary c;
  c.pi_time = pi_time;
  std::tie(c.pi_peak_time, c.pi_contrast) = detail::window_extremum(pe, 0.5 * pi_time, 1.5 * pi_time, true);
  double trough = 0.0;
  std::tie(c.two_pi_trough_time, trough) = detail::window_extremum(pe, 1.5 * pi_time, 2.5 * pi_time, false);
  c.two_pi_contrast = c.pi_contrast - trough;
  return c;
}

inline ContrastSummary contrast_summary(const ThermalScenario& s) {
  return contrast_summary(ThermalEnsemble(s), s.pi_time());
}

struct DetuningOptimum {
  double detuning = 0.0;
  ContrastSummary contrast;
  bool boundary_warning = false;
};

/// Laser detuning maximizing the pi-pulse contrast over [lo, hi] (absolute detuning, rad/s).
inline DetuningOptimum optimize_contrast_detuning(const ThermalScenario& s, SearchRange range,
                                                  int grid_points = 41) {
  auto objective = [&](const PulseSpec& p) {
    ThermalScenario t = s;
    t.detuning = p.detuning;
    return -contrast_summary(t).pi_contrast;
  };
  OptimizeOptions o;
  o.detuning = range;
  o.grid_points = grid_points;
  const PulseSpec start{s.rabi, s.detuning, 0.0, s.pi_time()};
  const OptimizeResult r =
      optimize_parameters(objective, start, o, TransitionTarget{s.transition, 0}.bare_detuning(s.omega_z));
  ThermalScenario best = s;
  best.detuning = r.pulse.detuning;
  return {r.pulse.detuning, contrast_summary(best), r.boundary_warning};
}

// ---------------------------------------------------------------------------
// Presets for the experimental traces (40Ca+, 729 nm, axial mode at 1850 kHz).

inline ThermalScenario preset_scenario(const std::string& name) {
  const double khz = constants::two_pi * 1e3;
  ThermalScenario s;
  s.name = name;
  s.eta_z = 0.045;
  s.omega_z = 1850.0 * khz;
  s.n_max = 1;
  const ThermalMode x_mode{"x", 0.04, 4000.0 * khz, 12.0};
  const ThermalMode y_mode{"y", 0.01, 1925.0 * khz, 25.0};
  if (name == "fig1a") {
    s.rabi = 1090.0 * khz;
    s.transition = TransitionKind::carrier;
    s.detuning = 0.0;
    s.spectators = {x_mode};
  } else if (name == "fig1b") {
    // Low power, tuned onto the light-shifted blue sideband.
    s.rabi = 7.4 * khz / s.eta_z;
    s.transition = TransitionKind::blue_sideband;
    s.detuning = s.omega_z + light_shift_numeric(s.eta_z, s.omega_z, s.rabi,
                                                 TransitionTarget{TransitionKind::blue_sideband, 0});
    s.spectators = {y_mode};
  } else if (name == "fig3") {
    s.rabi = 1090.0 * khz;
    s.transition = TransitionKind::blue_sideband;
    s.detuning = s.omega_z - 375.0 * khz;
    s.spectators = {y_mode};
  } else if (name == "fig4") {
    // All modes cold; the detuning is re-optimized by the caller.
    s.rabi = 1090.0 * khz;
    s.transition = TransitionKind::blue_sideband;
    s.detuning = s.omega_z - 355.0 * khz;
  } else {
    throw ValidationError("unknown scenario preset '" + name + "' (expected fig1a, fig1b, fig3, fig4)");
  }
  return s;
}

/// Search window used for the fig4 detuning optimization, relative to the blue sideband.
inline SearchRange preset_detuning_window(const ThermalScenario& s) {
  const double khz = constants::two_pi * 1e3;
  return {s.omega_z - 450.0 * khz, s.omega_z - 250.0 * khz};
}

}  // namespace gatelab
