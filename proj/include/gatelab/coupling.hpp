#pragma once

// Lamb-Dicke coupling factors C_nm between vibrational Fock states.
//
// <n| exp(i eta (a + a^dagger)) |m> = exp(-eta^2/2) C_nm, with
//
//   C_nm = sqrt(n! m!) (i eta)^{|n-m|}
//          sum_{j=0}^{min(n,m)} (-1)^j eta^{2j} / (j! (j+|n-m|)! (min(n,m)-j)!)
//
// The Gaussian prefactor is folded into the Rabi frequency, so C_nm is the
// polynomial part only.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>

#include <Eigen/Dense>

#include "gatelab/errors.hpp"

namespace gatelab {

using Complex = std::complex<double>;

inline constexpr int kMaxFactorial = 170;
inline constexpr int kMaxVibrationalLevel = 20;

namespace detail {

inline const std::array<double, kMaxFactorial + 1>& factorial_table() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> t{};
    t[0] = 1.0;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

inline double factorial(int n) { return factorial_table().at(static_cast<std::size_t>(n)); }

/// i^k for integer k >= 0.
inline Complex i_power(int k) {
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace detail

inline Complex coupling_element(int n, int m, double eta) {
  detail::require(n >= 0 && m >= 0, "coupling_element: Fock indices must be non-negative");
  detail::require(n <= kMaxFactorial && m <= kMaxFactorial,
                  "coupling_element: Fock index beyond factorial table");
  detail::require(eta >= 0.0, "coupling_element: eta must be non-negative");
  const int lo = std::min(n, m);
  const int diff = std::abs(n - m);
  const double eta2 = eta * eta;
  double sum = 0.0;
  double eta_pow = 1.0;
  for (int j = 0; j <= lo; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += sign * eta_pow /
           (detail::factorial(j) * detail::factorial(j + diff) * detail::factorial(lo - j));
    eta_pow *= eta2;
  }
  const double magnitude =
      std::sqrt(detail::factorial(n) * detail::factorial(m)) * std::pow(eta, diff) * sum;
  return detail::i_power(diff) * magnitude;
}

struct CouplingMatrix {
  double eta = 0.0;
  int n_max = 0;
  Eigen::MatrixXcd elements;  // (n_max+1) x (n_max+1), indexed [n][m]

  Complex operator()(int n, int m) const { return elements(n, m); }
};

inline CouplingMatrix coupling_matrix(int n_max, double eta) {
  detail::require(n_max >= 0 && n_max <= kMaxVibrationalLevel,
                  "coupling_matrix: n_max must lie in [0, " + std::to_string(kMaxVibrationalLevel) + "]");
  CouplingMatrix out{eta, n_max, Eigen::MatrixXcd(n_max + 1, n_max + 1)};
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= n_max; ++m) out.elements(n, m) = coupling_element(n, m, eta);
  return out;
}

class OracleUnconverged : public NumericalError {
 public:
  explicit OracleUnconverged(const std::string& what) : NumericalError(what) {}
};

namespace detail {

/// exp(i eta X) on a Fock space of size `dim`, with X = a + a^dagger (tridiagonal).
inline Eigen::MatrixXcd truncated_displacement(double eta, int dim) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd sub(dim - 1);
  for (int k = 0; k + 1 < dim; ++k) sub(k) = std::sqrt(static_cast<double>(k + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw NumericalError("coupling_oracle: tridiagonal eigensolver failed");
  const Eigen::MatrixXd& w = solver.eigenvectors();
  Eigen::VectorXcd phases(dim);
  for (int k = 0; k < dim; ++k) phases(k) = std::exp(Complex(0.0, eta * solver.eigenvalues()(k)));
  return w.cast<Complex>() * phases.asDiagonal() * w.transpose().cast<Complex>();
}

}  // namespace detail

/// Brute-force <n| exp(i eta (a + a^dagger)) |m> from a truncated Fock space.
/// Includes the exp(-eta^2/2) factor, so it equals exp(-eta^2/2) * coupling_element(n, m, eta).
/// Throws OracleUnconverged if growing the truncation by 10 moves the value by more than 1e-12.
inline Complex coupling_oracle(int n, int m, double eta, int oracle_truncation) {
  detail::require(n >= 0 && m >= 0, "coupling_oracle: Fock indices must be non-negative");
  detail::require(eta >= 0.0, "coupling_oracle: eta must be non-negative");
  detail::require(oracle_truncation >= n + m + 20,
                  "coupling_oracle: truncation must be at least n + m + 20");
  const Complex coarse = detail::truncated_displacement(eta, oracle_truncation)(n, m);
  const Complex fine = detail::truncated_displacement(eta, oracle_truncation + 10)(n, m);
  if (std::abs(fine - coarse) > 1e-12)
    throw OracleUnconverged("coupling_oracle: element (" + std::to_string(n) + "," +
                            std::to_string(m) + ") not converged at truncation " +
                            std::to_string(oracle_truncation));
  return fine;
}

}  // namespace gatelab
