#pragma once

// Gate targets, worst-case fidelity, and pulse-parameter optimization for the
// sideband swap, the auxiliary-level controlled phase, and the Monroe
// magic-eta carrier gate.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "gatelab/constants.hpp"
#include "gatelab/coupling.hpp"
#include "gatelab/dynamics.hpp"
#include "gatelab/errors.hpp"

namespace gatelab {

enum class GateKind { swap, cz_aux, monroe_cx, identity };

inline std::string to_string(GateKind k) {
  switch (k) {
    case GateKind::swap: return "SWAP";
    case GateKind::cz_aux: return "CZ_AUX";
    case GateKind::monroe_cx: return "MONROE_CX";
    case GateKind::identity: return "IDENTITY";
  }
  return "?";
}

inline GateKind parse_gate_kind(const std::string& text) {
  if (text == "SWAP" || text == "swap") return GateKind::swap;
  if (text == "CZ_AUX" || text == "cz_aux" || text == "cz") return GateKind::cz_aux;
  if (text == "MONROE_CX" || text == "monroe_cx" || text == "monroe") return GateKind::monroe_cx;
  if (text == "IDENTITY" || text == "identity") return GateKind::identity;
  throw ValidationError("unknown gate kind '" + text + "'");
}

inline Sideband parse_sideband(const std::string& text) {
  if (text == "red") return Sideband::red;
  if (text == "blue") return Sideband::blue;
  throw ValidationError("unknown sideband '" + text + "' (expected red or blue)");
}

/// Computational basis order used by GateSpec::target: |g,0>, |g,1>, |e,0>, |e,1>.
enum ComputationalState : int { g0 = 0, g1 = 1, e0 = 2, e1 = 3 };

inline std::array<int, 4> computational_indices(const SystemBasis& basis) {
  detail::require(basis.n_max >= 1, "computational subspace needs n_max >= 1");
  return {basis.index(Internal::ground, 0), basis.index(Internal::ground, 1),
          basis.index(Internal::excited, 0), basis.index(Internal::excited, 1)};
}

/// Target unitary on the 4-dim computational subspace plus the input domain the
/// gate is defined on. Fidelity is minimized over states in the domain only.
struct GateSpec {
  GateKind kind = GateKind::identity;
  Eigen::Matrix4cd target = Eigen::Matrix4cd::Identity();
  std::vector<int> domain{g0, g1, e0, e1};
  TransitionTarget transition{TransitionKind::carrier, 0};

  double unitarity_error() const {
    return (target.adjoint() * target - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
  }

  static GateSpec identity() { return {}; }

  /// pi pulse on the first sideband. Red: |e,0> -> |g,1>, |g,1> -> -|e,0>;
  /// blue is the g <-> e mirror. Domain is the vibrational ground state.
  static GateSpec swap(Sideband s) {
    GateSpec g;
    g.kind = GateKind::swap;
    g.transition = TransitionTarget::sideband(s);
    apply_pair_rotation(g.target, s, constants::pi);
    g.domain = {g0, e0};
    return g;
  }

  /// 2 pi pulse on the sideband of an auxiliary transition (modelled by the same
  /// two-level ion). Red: |g,1> picks up -1, |g,0> is idle. The auxiliary level
  /// starts empty, so the domain is {|g,0>, |g,1>} (blue: the mirror {|e,0>, |e,1>}).
  static GateSpec cz_aux(Sideband s) {
    GateSpec g;
    g.kind = GateKind::cz_aux;
    g.transition = TransitionTarget::sideband(s);
    apply_pair_rotation(g.target, s, 2.0 * constants::pi);
    g.domain = s == Sideband::red ? std::vector<int>{g0, g1} : std::vector<int>{e0, e1};
    return g;
  }

  /// 2m pi carrier pulse at eta^2 = 1/(2m): n = 0 completes m Rabi cycles,
  /// n = 1 rotates by (2m-1) pi, a controlled-NOT up to the phases below.
  static GateSpec monroe(int m) {
    detail::require(m >= 1, "monroe gate: m must be >= 1");
    GateSpec g;
    g.kind = GateKind::monroe_cx;
    g.transition = {TransitionKind::carrier, 0};
    const double half0 = m * constants::pi;
    const double half1 = (2.0 * m - 1.0) * constants::pi / 2.0;
    g.target = Eigen::Matrix4cd::Zero();
    g.target(g0, g0) = g.target(e0, e0) = std::cos(half0);
    g.target(g0, e0) = g.target(e0, g0) = Complex(0.0, -std::sin(half0));
    g.target(g1, g1) = g.target(e1, e1) = std::cos(half1);
    g.target(g1, e1) = g.target(e1, g1) = Complex(0.0, -std::sin(half1));
    return g;
  }

 private:
  // exp(-i (area/2) M) with M = i|a><b| - i|b><a| on the resonant sideband pair.
  static void apply_pair_rotation(Eigen::Matrix4cd& t, Sideband s, double area) {
    const int a = s == Sideband::red ? g1 : g0;
    const int b = s == Sideband::red ? e0 : e1;
    const double c = std::cos(area / 2.0), sn = std::sin(area / 2.0);
    t(a, a) = c;
    t(b, b) = c;
    t(a, b) = sn;   // -i * sin * (i)
    t(b, a) = -sn;  // -i * sin * (-i)
  }
};

struct GateReport {
  double f_min = 1.0;
  double epsilon = 0.0;
  PulseSpec pulse_used;
  double light_shift_applied = 0.0;  // detuning offset from the bare transition, rad/s
  double phase_correction = 0.0;     // radians
  bool converged = true;
  bool boundary_warning = false;
  Eigen::VectorXcd worst_state;  // in the gate's domain coordinates
};

/// Delta phi = Delta omega * T.
inline double phase_correction(double delta_omega, double duration) { return delta_omega * duration; }

namespace detail {

/// A = (G Q)^dagger U_phi^dagger P Q restricted to the gate's domain.
inline Eigen::MatrixXcd domain_overlap(const Propagator& p, const GateSpec& g, double delta_phi) {
  const auto comp = computational_indices(p.basis);
  const int dim = p.basis.dimension();
  const int k = static_cast<int>(g.domain.size());
  detail::require(p.matrix.rows() == dim && p.matrix.cols() == dim, "propagator has wrong dimension");
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(dim, k);
  Eigen::MatrixXcd gq = Eigen::MatrixXcd::Zero(dim, k);
  for (int j = 0; j < k; ++j) {
    q(comp[g.domain[j]], j) = 1.0;
    for (int r = 0; r < 4; ++r) gq(comp[r], j) = g.target(r, g.domain[j]);
  }
  // U_phi = diag(e^{+i dphi/2} on g, e^{-i dphi/2} on e); apply its inverse.
  Eigen::MatrixXcd corrected = p.matrix;
  const int levels = p.basis.levels();
  for (int r = 0; r < dim; ++r)
    corrected.row(r) *= std::exp(Complex(0.0, (r < levels ? -0.5 : 0.5) * delta_phi));
  return gq.adjoint() * corrected * q;
}

/// lambda_min of the Hermitian part of e^{-i theta} A, and its eigenvector.
inline std::pair<double, Eigen::VectorXcd> rotated_support(const Eigen::MatrixXcd& a, double theta) {
  const Complex rot = std::exp(Complex(0.0, -theta));
  const Eigen::MatrixXcd h = 0.5 * (rot * a + std::conj(rot) * a.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

struct NumericalRangeDistance {
  double f_min = 0.0;
  Eigen::VectorXcd worst_state;
  bool certified = true;
};

/// min over unit psi of |<psi|A|psi>|^2. The numerical range of A is convex, so the
/// distance from the origin is max(0, max_theta lambda_min(Herm(e^{-i theta} A))).
inline NumericalRangeDistance numerical_range_min(const Eigen::MatrixXcd& a) {
  constexpr int kGrid = 360;
  const double step = constants::two_pi / kGrid;
  std::vector<double> values(kGrid);
  for (int i = 0; i < kGrid; ++i) values[i] = rotated_support(a, i * step).first;
  // Refine around the three best grid points; the support function can be multimodal.
  std::vector<int> order(kGrid);
  for (int i = 0; i < kGrid; ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                    [&](int x, int y) { return values[x] > values[y]; });
  double best_theta = order[0] * step;
  double best_value = values[order[0]];
  for (int c = 0; c < 3; ++c) {
    const double center = order[c] * step;
    std::uintmax_t iters = 100;
    auto negated = [&](double th) { return -rotated_support(a, th).first; };
    const auto [th, v] = boost::math::tools::brent_find_minima(negated, center - step, center + step,
                                                               50, iters);
    if (-v > best_value) {
      best_value = -v;
      best_theta = th;
    }
  }
  NumericalRangeDistance out;
  auto [lam, vec] = rotated_support(a, best_theta);
  out.worst_state = vec;
  if (best_value <= 0.0) {
    out.f_min = 0.0;
    return out;
  }
  out.f_min = best_value * best_value;
  const double achieved = std::norm(vec.dot(a * vec));
  // Degenerate lambda_min leaves the eigenvector ambiguous; only a clear miss is flagged.
  out.certified = achieved - out.f_min <= 1e-6 || std::abs(lam - best_value) > 1e-9;
  return out;
}

}  // namespace detail

/// Worst-case fidelity f_min = min_psi |<psi| G^dagger U_phi^dagger P |psi>|^2 over
/// the gate's input domain, and epsilon = sqrt(1 - f_min).
inline GateReport imprecision(const Propagator& p, const GateSpec& g, double delta_phi = 0.0) {
  const Eigen::MatrixXcd a = detail::domain_overlap(p, g, delta_phi);
  const auto d = detail::numerical_range_min(a);
  GateReport r;
  r.f_min = std::clamp(d.f_min, 0.0, 1.0);
  r.epsilon = std::sqrt(1.0 - r.f_min);
  r.phase_correction = delta_phi;
  r.pulse_used.duration = p.duration;
  r.converged = d.certified;
  r.worst_state = d.worst_state;
  return r;
}

/// Independent estimate of f_min: minimum over Haar-random states in the domain.
/// Sampling can only over-estimate the true minimum.
inline double fidelity_oracle(const Propagator& p, const GateSpec& g, double delta_phi,
                              std::int64_t sample_count, std::uint64_t seed = 20010101) {
  detail::require(sample_count >= 100000, "fidelity_oracle: sample_count must be >= 1e5");
  const Eigen::MatrixXcd a = detail::domain_overlap(p, g, delta_phi);
  const auto k = a.rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd psi(k);
  double best = 1.0;
  for (std::int64_t s = 0; s < sample_count; ++s) {
    for (Eigen::Index i = 0; i < k; ++i) psi(i) = Complex(normal(rng), normal(rng));
    psi.normalize();
    best = std::min(best, std::norm(psi.dot(a * psi)));
  }
  return best;
}

enum class LightShiftModel { none, analytic, numeric };

/// Sideband pi pulse: T_S = pi / (eta Omega). Corrected pulses are tuned onto the
/// light-shifted resonance (red: -wz + dw, blue: +wz - dw).
inline PulseSpec swap_pulse(double eta, double rabi, double omega_z, bool corrected, Sideband sideband,
                            LightShiftModel model = LightShiftModel::analytic, int n_max = 3) {
  detail::require(eta > 0.0 && rabi > 0.0, "swap_pulse: eta and Omega must be positive");
  detail::require(omega_z > 0.0, "swap_pulse: omega_z must be positive");
  const TransitionTarget target = TransitionTarget::sideband(sideband);
  double offset = 0.0;
  if (corrected && model == LightShiftModel::analytic) {
    offset = light_shift_analytic(eta, omega_z, rabi);
    if (sideband == Sideband::blue) offset = -offset;
  } else if (corrected && model == LightShiftModel::numeric) {
    offset = light_shift_numeric(eta, omega_z, rabi, target, n_max);
  }
  return {rabi, target.bare_detuning(omega_z) + offset, 0.0, constants::pi / (eta * rabi)};
}

/// 2 pi sideband pulse, T_C1 = 2 pi / (eta Omega) = 2 T_S.
inline PulseSpec cz_aux_pulse(double eta, double rabi, double omega_z, bool corrected = false,
                              Sideband sideband = Sideband::red,
                              LightShiftModel model = LightShiftModel::analytic, int n_max = 3) {
  PulseSpec p = swap_pulse(eta, rabi, omega_z, corrected, sideband, model, n_max);
  p.duration *= 2.0;
  return p;
}

struct MonroePulse {
  PulseSpec pulse;
  double required_eta = 0.0;
};

/// 2m pi carrier pulse, T_C2 = 2 m pi / Omega, at eta = 1/sqrt(2m).
inline MonroePulse monroe_pulse(int m, double rabi, double duration_correction = 0.0) {
  detail::require(m >= 1, "monroe_pulse: m must be >= 1");
  detail::require(rabi > 0.0, "monroe_pulse: Omega must be positive");
  const double duration = 2.0 * m * constants::pi / rabi + duration_correction;
  detail::require(duration >= 0.0, "monroe_pulse: corrected duration is negative");
  return {{rabi, 0.0, 0.0, duration}, 1.0 / std::sqrt(2.0 * m)};
}

/// Simulate one pulse and score it against a gate. The frame mismatch between the
/// laser and the bare transition is undone with Delta phi = (delta - delta_bare) T.
inline GateReport evaluate_gate(const GateSpec& gate, double eta, double omega_z, const PulseSpec& pulse,
                                int n_max = 3) {
  const SystemBasis basis{n_max};
  const RotatingHamiltonian h = build_hamiltonian(eta, omega_z, pulse, basis);
  const Propagator p = propagate(h, pulse.duration);
  const double offset = pulse.detuning - gate.transition.bare_detuning(omega_z);
  GateReport r = imprecision(p, gate, phase_correction(offset, pulse.duration));
  r.pulse_used = pulse;
  r.light_shift_applied = offset;
  return r;
}

// ---------------------------------------------------------------------------
// Optimization

struct SearchRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct OptimizeOptions {
  std::optional<SearchRange> detuning;  // absolute laser detuning delta (rad/s)
  std::optional<SearchRange> duration;  // seconds
  int grid_points = 41;
  int refinement_rounds = 4;
};

struct OptimizeResult {
  PulseSpec pulse;
  double objective = 0.0;  // minimized value
  bool boundary_warning = false;
};

/// Coarse grid over the free parameters, then Brent refinement (coordinate-wise in 2-D)
/// inside the neighbouring grid cell. Minimizes `objective`. Ties within 1e-9 go to the
/// smallest |delta - reference_detuning|. Deterministic.
inline OptimizeResult optimize_parameters(const std::function<double(const PulseSpec&)>& objective,
                                          const PulseSpec& start, const OptimizeOptions& options,
                                          double reference_detuning = 0.0) {
  detail::require(options.detuning || options.duration, "optimize: no free parameters");
  detail::require(options.grid_points >= 3, "optimize: grid_points must be >= 3");
  auto check_range = [](const std::optional<SearchRange>& r, const char* name) {
    if (r) detail::require(r->hi > r->lo, std::string("optimize: empty ") + name + " range");
  };
  check_range(options.detuning, "detuning");
  check_range(options.duration, "duration");
  if (options.duration) detail::require(options.duration->lo >= 0.0, "optimize: negative duration");

  const int n = options.grid_points;
  const int nd = options.detuning ? n : 1;
  const int nt = options.duration ? n : 1;
  auto grid_value = [n](const std::optional<SearchRange>& r, int i, double fallback) {
    return r ? r->lo + (r->hi - r->lo) * i / (n - 1) : fallback;
  };

  PulseSpec best = start;
  double best_value = std::numeric_limits<double>::infinity();
  int best_i = 0, best_j = 0;
  for (int i = 0; i < nd; ++i) {
    for (int j = 0; j < nt; ++j) {
      PulseSpec p = start;
      p.detuning = grid_value(options.detuning, i, start.detuning);
      p.duration = grid_value(options.duration, j, start.duration);
      const double v = objective(p);
      const bool better = v < best_value - 1e-9;
      const bool tie_closer = std::abs(v - best_value) <= 1e-9 &&
                              std::abs(p.detuning - reference_detuning) <
                                  std::abs(best.detuning - reference_detuning);
      if (better || tie_closer) {
        best = p;
        best_value = std::min(v, best_value);
        if (better) best_value = v;
        best_i = i;
        best_j = j;
      }
    }
  }

  auto cell = [n](const std::optional<SearchRange>& r, int i) {
    const double h = (r->hi - r->lo) / (n - 1);
    const double c = r->lo + h * i;
    return SearchRange{std::max(r->lo, c - h), std::min(r->hi, c + h)};
  };
  const std::optional<SearchRange> det_cell =
      options.detuning ? std::optional(cell(options.detuning, best_i)) : std::nullopt;
  const std::optional<SearchRange> dur_cell =
      options.duration ? std::optional(cell(options.duration, best_j)) : std::nullopt;

  const int rounds = (options.detuning && options.duration) ? options.refinement_rounds : 1;
  for (int round = 0; round < rounds; ++round) {
    if (det_cell) {
      std::uintmax_t iters = 200;
      auto f = [&](double d) { PulseSpec p = best; p.detuning = d; return objective(p); };
      const auto [x, v] = boost::math::tools::brent_find_minima(f, det_cell->lo, det_cell->hi, 40, iters);
      if (v < best_value) { best.detuning = x; best_value = v; }
    }
    if (dur_cell) {
      std::uintmax_t iters = 200;
      auto f = [&](double t) { PulseSpec p = best; p.duration = t; return objective(p); };
      const auto [x, v] = boost::math::tools::brent_find_minima(f, dur_cell->lo, dur_cell->hi, 40, iters);
      if (v < best_value) { best.duration = x; best_value = v; }
    }
  }

  OptimizeResult out{best, best_value, false};
  auto on_edge = [](const std::optional<SearchRange>& r, double x) {
    if (!r) return false;
    const double tol = 1e-6 * (r->hi - r->lo);
    return x - r->lo <= tol || r->hi - x <= tol;
  };
  out.boundary_warning = on_edge(options.detuning, best.detuning) || on_edge(options.duration, best.duration);
  return out;
}

/// Minimize epsilon for a gate over detuning and/or duration.
inline GateReport optimize_pulse(const GateSpec& gate, double eta, double omega_z, const PulseSpec& start,
                                 const OptimizeOptions& options, int n_max = 3) {
  auto objective = [&](const PulseSpec& p) { return evaluate_gate(gate, eta, omega_z, p, n_max).epsilon; };
  const OptimizeResult res =
      optimize_parameters(objective, start, options, gate.transition.bare_detuning(omega_z));
  GateReport report = evaluate_gate(gate, eta, omega_z, res.pulse, n_max);
  report.boundary_warning = res.boundary_warning;
  return report;
}

}  // namespace gatelab
