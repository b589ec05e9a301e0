#pragma once

// Two-level ion coupled to one vibrational mode: rotating-frame Hamiltonian,
// exact propagators, population traces and light shifts.
//
// Units: hbar = 1, all frequencies in rad/s, times in seconds.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "gatelab/coupling.hpp"
#include "gatelab/errors.hpp"

namespace gatelab {

enum class Internal { ground = 0, excited = 1 };

/// |g,0>..|g,n_max>, |e,0>..|e,n_max>.
struct SystemBasis {
  int n_max = 3;

  int levels() const { return n_max + 1; }
  int dimension() const { return 2 * levels(); }
  int index(Internal s, int n) const {
    detail::require(n >= 0 && n <= n_max, "SystemBasis: vibrational index out of range");
    return (s == Internal::ground ? 0 : levels()) + n;
  }
  std::pair<Internal, int> label(int i) const {
    return i < levels() ? std::pair{Internal::ground, i} : std::pair{Internal::excited, i - levels()};
  }
  std::string label_text(int i) const {
    auto [s, n] = label(i);
    return std::string(s == Internal::ground ? "g" : "e") + std::to_string(n);
  }
  Eigen::VectorXcd state(Internal s, int n) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dimension());
    v(index(s, n)) = 1.0;
    return v;
  }
  void validate() const {
    detail::require(n_max >= 0 && n_max <= kMaxVibrationalLevel,
                    "SystemBasis: n_max must lie in [0, " + std::to_string(kMaxVibrationalLevel) + "]");
  }
};

struct PulseSpec {
  double rabi = 0.0;      // Omega, already including exp(-eta^2/2)
  double detuning = 0.0;  // delta = omega_L - omega_0
  double phase = 0.0;     // laser phase phi
  double duration = 0.0;  // seconds

  void validate() const {
    detail::require(rabi >= 0.0 && std::isfinite(rabi), "pulse: Rabi frequency must be >= 0");
    detail::require(duration >= 0.0, "pulse: duration must be >= 0");
    detail::require(std::isfinite(detuning) && std::isfinite(phase), "pulse: non-finite parameter");
  }
};

/// Time-independent Hamiltonian in the frame rotating at the laser frequency,
/// together with its Omega = 0 reference and a cached eigendecomposition.
class RotatingHamiltonian {
 public:
  RotatingHamiltonian(SystemBasis basis, Eigen::MatrixXcd matrix, Eigen::VectorXd reference)
      : basis_(basis), matrix_(std::move(matrix)), reference_(std::move(reference)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_);
    if (solver.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "Hermitian eigendecomposition failed (dimension " << matrix_.rows()
          << ", norm " << matrix_.norm() << ", hermiticity defect "
          << (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() << ")";
      throw NumericalError(msg.str());
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
  }

  const SystemBasis& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  /// Diagonal of the Omega = 0 Hamiltonian (the computational-frame reference).
  const Eigen::VectorXd& reference_diagonal() const { return reference_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }

  double hermiticity_defect() const { return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff(); }

  /// exp(-i H t) in the rotating frame.
  Eigen::MatrixXcd rotating_evolution(double t) const {
    Eigen::VectorXcd phases(eigenvalues_.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k)
      phases(k) = std::exp(Complex(0.0, -eigenvalues_(k) * t));
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
  }

 private:
  SystemBasis basis_;
  Eigen::MatrixXcd matrix_;
  Eigen::VectorXd reference_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

struct Propagator {
  Eigen::MatrixXcd matrix;
  double duration = 0.0;
  SystemBasis basis;

  /// max |P^dagger P - 1|
  double unitarity_error() const {
    const auto n = matrix.rows();
    return (matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  }
  Complex element(Internal out_s, int out_n, Internal in_s, int in_n) const {
    return matrix(basis.index(out_s, out_n), basis.index(in_s, in_n));
  }
};

/// H = diag(n wz + delta/2 | n wz - delta/2) + (Omega/2) [[0, C e^{i phi}], [h.c., 0]]
/// (common offsets dropped). The reference is the same diagonal with Omega = 0.
inline RotatingHamiltonian build_hamiltonian(double eta_z, double omega_z, const PulseSpec& pulse,
                                             const SystemBasis& basis) {
  basis.validate();
  pulse.validate();
  detail::require(omega_z > 0.0, "build_hamiltonian: omega_z must be positive");
  const int levels = basis.levels();
  const CouplingMatrix c = coupling_matrix(basis.n_max, eta_z);
  Eigen::VectorXd reference(basis.dimension());
  for (int n = 0; n < levels; ++n) {
    reference(n) = n * omega_z + 0.5 * pulse.detuning;
    reference(levels + n) = n * omega_z - 0.5 * pulse.detuning;
  }
  Eigen::MatrixXcd h = reference.cast<Complex>().asDiagonal();
  const Complex drive = 0.5 * pulse.rabi * std::exp(Complex(0.0, pulse.phase));
  for (int n = 0; n < levels; ++n) {
    for (int m = 0; m < levels; ++m) {
      const Complex v = drive * c(n, m);
      h(n, levels + m) = v;
      h(levels + m, n) = std::conj(v);
    }
  }
  return RotatingHamiltonian(basis, std::move(h), std::move(reference));
}

/// Computational-frame propagator exp(+i H0 t) exp(-i H t).
inline Propagator propagate(const RotatingHamiltonian& h, double t) {
  detail::require(t >= 0.0, "propagate: time must be non-negative");
  Eigen::MatrixXcd p = h.rotating_evolution(t);
  const Eigen::VectorXd& ref = h.reference_diagonal();
  for (Eigen::Index r = 0; r < p.rows(); ++r) p.row(r) *= std::exp(Complex(0.0, ref(r) * t));
  return {std::move(p), t, h.basis()};
}

struct PopulationTrace {
  std::vector<double> times;
  Eigen::MatrixXd probabilities;  // rows: time points, columns: basis states
  SystemBasis basis;

  double excited_population(std::size_t row) const {
    const int lv = basis.levels();
    return probabilities.row(static_cast<Eigen::Index>(row)).segment(lv, lv).sum();
  }
  std::vector<double> excited_series() const {
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) out[i] = excited_population(i);
    return out;
  }
};

/// |amplitude|^2 per basis state at each time. Probabilities are frame independent,
/// so the cached eigendecomposition is reused directly.
inline PopulationTrace population_trace(const Eigen::VectorXcd& initial, const RotatingHamiltonian& h,
                                        std::span<const double> times) {
  const int dim = h.basis().dimension();
  detail::require(initial.size() == dim, "population_trace: initial state has wrong dimension");
  const double norm = initial.norm();
  detail::require(norm > 0.0, "population_trace: initial state is zero");
  for (std::size_t i = 0; i < times.size(); ++i) {
    detail::require(times[i] >= 0.0, "population_trace: times must be non-negative");
    if (i > 0) detail::require(times[i] >= times[i - 1], "population_trace: times must be sorted");
  }
  const Eigen::VectorXcd coeffs = h.eigenvectors().adjoint() * (initial / norm);
  PopulationTrace out{std::vector<double>(times.begin(), times.end()),
                      Eigen::MatrixXd(static_cast<Eigen::Index>(times.size()), dim), h.basis()};
  Eigen::VectorXcd evolved(dim);
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (int k = 0; k < dim; ++k)
      evolved(k) = coeffs(k) * std::exp(Complex(0.0, -h.eigenvalues()(k) * times[i]));
    out.probabilities.row(static_cast<Eigen::Index>(i)) =
        (h.eigenvectors() * evolved).cwiseAbs2().transpose();
  }
  return out;
}

/// Small-Omega light shift of the first red sideband,
/// (1/2)(1 + eta^2/2)(Omega/wz)^2 wz + (1/8)(Omega/wz)^4 wz.
inline double light_shift_analytic(double eta, double omega_z, double rabi) {
  detail::require(rabi >= 0.0, "light_shift_analytic: Omega must be >= 0");
  detail::require(omega_z > 0.0, "light_shift_analytic: omega_z must be positive");
  const double x = rabi / omega_z;
  return 0.5 * (1.0 + 0.5 * eta * eta) * x * x * omega_z + 0.125 * x * x * x * x * omega_z;
}

enum class Sideband { red, blue };

enum class TransitionKind { red_sideband, blue_sideband, carrier };

/// A driven pair: red |g,n+1>-|e,n>, blue |g,n>-|e,n+1>, carrier |g,n>-|e,n>.
struct TransitionTarget {
  TransitionKind kind = TransitionKind::red_sideband;
  int n = 0;

  static TransitionTarget sideband(Sideband s) {
    return {s == Sideband::red ? TransitionKind::red_sideband : TransitionKind::blue_sideband, 0};
  }

  double bare_detuning(double omega_z) const {
    switch (kind) {
      case TransitionKind::red_sideband: return -omega_z;
      case TransitionKind::blue_sideband: return omega_z;
      case TransitionKind::carrier: return 0.0;
    }
    return 0.0;
  }
  std::pair<int, int> ground_excited_levels() const {
    switch (kind) {
      case TransitionKind::red_sideband: return {n + 1, n};
      case TransitionKind::blue_sideband: return {n, n + 1};
      case TransitionKind::carrier: return {n, n};
    }
    return {n, n};
  }
};

class AmbiguousLabeling : public NumericalError {
 public:
  explicit AmbiguousLabeling(const std::string& what) : NumericalError(what) {}
};

namespace detail {

/// Splitting of the two dressed levels carrying the most weight on the target pair.
inline double pair_splitting(const RotatingHamiltonian& h, int ia, int ib) {
  const Eigen::MatrixXcd& v = h.eigenvectors();
  std::vector<std::pair<double, int>> weights;
  for (Eigen::Index k = 0; k < v.cols(); ++k)
    weights.emplace_back(std::norm(v(ia, k)) + std::norm(v(ib, k)), static_cast<int>(k));
  std::partial_sort(weights.begin(), weights.begin() + 2, weights.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  if (weights[1].first < 0.5)
    throw AmbiguousLabeling("light_shift_numeric: dressed levels cannot be matched to the target pair "
                            "(max overlap " + std::to_string(weights[1].first) + ")");
  return std::abs(h.eigenvalues()(weights[0].second) - h.eigenvalues()(weights[1].second));
}

}  // namespace detail

/// Light shift of a driven transition from the eigenvalues of H: the laser detuning
/// at which the target pair's dressed levels anticross, minus the bare resonance.
/// The resonance is followed adiabatically from Omega = 0 in steps of <= 0.05 wz.
/// Red sideband returns +Delta omega (matching light_shift_analytic); blue returns its mirror.
inline double light_shift_numeric(double eta, double omega_z, double rabi, TransitionTarget target,
                                  int n_max = 3) {
  detail::require(omega_z > 0.0, "light_shift_numeric: omega_z must be positive");
  detail::require(rabi >= 0.0, "light_shift_numeric: Omega must be >= 0");
  detail::require(rabi < 2.0 * omega_z,
                  "light_shift_numeric: Omega >= 2 omega_z, level identification unreliable");
  const SystemBasis basis{n_max};
  const auto [ng, ne] = target.ground_excited_levels();
  detail::require(std::max(ng, ne) <= n_max, "light_shift_numeric: target pair outside basis");
  if (rabi == 0.0) return 0.0;
  const int ia = basis.index(Internal::ground, ng);
  const int ib = basis.index(Internal::excited, ne);
  const double bare = target.bare_detuning(omega_z);
  const double pair_coupling = std::abs(coupling_element(ng, ne, eta));

  const int steps = std::max(1, static_cast<int>(std::ceil(rabi / (0.05 * omega_z))));
  double offset = 0.0;
  double previous_estimate = 0.0;
  for (int k = 1; k <= steps; ++k) {
    const double omega_k = rabi * k / steps;
    const double estimate = light_shift_analytic(eta, omega_z, omega_k);
    const double half_width =
        2.0 * std::abs(estimate - previous_estimate) + omega_k * std::max(pair_coupling, 1e-3);
    previous_estimate = estimate;
    auto splitting = [&](double shift) {
      const PulseSpec p{omega_k, bare + shift, 0.0, 0.0};
      return detail::pair_splitting(build_hamiltonian(eta, omega_z, p, basis), ia, ib);
    };
    std::uintmax_t iterations = 200;
    const auto [best, value] = boost::math::tools::brent_find_minima(
        splitting, offset - half_width, offset + half_width, 40, iterations);
    (void)value;
    offset = best;
  }
  // Brent locates a minimum only to ~sqrt(machine eps); the squared splitting is a parabola
  // in the detuning near the anticrossing, so finish with two three-point vertex steps.
  const double h = 0.5 * rabi * std::max(pair_coupling, 1e-3);
  auto splitting_sq = [&](double shift) {
    const PulseSpec p{rabi, bare + shift, 0.0, 0.0};
    const double d = detail::pair_splitting(build_hamiltonian(eta, omega_z, p, basis), ia, ib);
    return d * d;
  };
  for (int round = 0; round < 2; ++round) {
    const double fm = splitting_sq(offset - h), f0 = splitting_sq(offset), fp = splitting_sq(offset + h);
    const double curvature = fp - 2.0 * f0 + fm;
    if (!(curvature > 0.0)) break;
    const double step = 0.5 * h * (fm - fp) / curvature;
    if (std::abs(step) > h) break;
    offset += step;
  }
  return offset;
}

}  // namespace gatelab
