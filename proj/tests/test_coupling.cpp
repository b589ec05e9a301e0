#include <gtest/gtest.h>

#include <cmath>

#include "gatelab/coupling.hpp"

using namespace gatelab;

namespace {

// Table of closed forms for the lowest levels, as polynomials in eta.
Complex table2(int n, int m, double e) {
  const double e2 = e * e, e3 = e2 * e, e4 = e2 * e2;
  const Complex i(0.0, 1.0);
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  if (n > m) return table2(m, n, e);
  if (n == 0 && m == 0) return 1.0;
  if (n == 0 && m == 1) return i * e;
  if (n == 0 && m == 2) return -e2 / s2;
  if (n == 0 && m == 3) return -i * e3 / s6;
  if (n == 1 && m == 1) return 1.0 - e2;
  if (n == 1 && m == 2) return i * s2 * e * (1.0 - e2 / 2.0);
  if (n == 1 && m == 3) return -std::sqrt(1.5) * e2 * (1.0 - e2 / 3.0);
  if (n == 2 && m == 2) return 1.0 - 2.0 * e2 + e4 / 2.0;
  if (n == 2 && m == 3) return i * s3 * e * (1.0 - e2 + e4 / 6.0);
  if (n == 3 && m == 3) return 1.0 - 3.0 * e2 + 1.5 * e4 - e4 * e2 / 6.0;
  return 0.0;
}

}  // namespace

TEST(Coupling, ReferenceExamples) {
  EXPECT_NEAR(std::abs(coupling_element(0, 1, 0.1) - Complex(0.0, 0.1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(coupling_element(2, 2, 0.1) - 0.98005), 0.0, 1e-14);
  const double expected = -std::sqrt(1.5) * 0.04 * (1.0 - 0.04 / 3.0);
  EXPECT_NEAR(coupling_element(1, 3, 0.2).real(), expected, 1e-15);
  EXPECT_NEAR(expected, -0.0483366, 1e-7);
  for (int n = 0; n < 6; ++n) EXPECT_EQ(coupling_element(n, n, 0.0), Complex(1.0, 0.0));
  EXPECT_EQ(coupling_element(0, 2, 0.0), Complex(0.0, 0.0));
}

TEST(Coupling, Table2Golden) {
  for (double eta : {0.045, 0.1, 0.2}) {
    const CouplingMatrix c = coupling_matrix(3, eta);
    for (int n = 0; n <= 3; ++n)
      for (int m = 0; m <= 3; ++m)
        EXPECT_LE(std::abs(c(n, m) - table2(n, m, eta)), 1e-12) << n << "," << m << " eta " << eta;
  }
}

TEST(Coupling, OracleEquivalence) {
  for (double eta : {0.01, 0.045, 0.1, 0.3, 0.6})
    for (int n = 0; n <= 5; ++n)
      for (int m = 0; m <= 5; ++m) {
        const Complex oracle = coupling_oracle(n, m, eta, n + m + 40);
        const Complex closed = std::exp(-0.5 * eta * eta) * coupling_element(n, m, eta);
        EXPECT_LE(std::abs(oracle - closed), 1e-10) << n << "," << m << " eta " << eta;
      }
}

TEST(Coupling, OracleExamples) {
  EXPECT_NEAR(std::abs(coupling_oracle(0, 0, 0.5, 60) - std::exp(-0.125)), 0.0, 1e-12);
  EXPECT_NEAR(std::exp(-0.125), 0.882497, 1e-6);
  EXPECT_NEAR(std::abs(coupling_oracle(0, 1, 0.1, 60) - Complex(0.0, 0.1 * std::exp(-0.005))), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(coupling_oracle(2, 3, 0.0, 60)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(coupling_oracle(3, 3, 0.0, 60) - 1.0), 0.0, 1e-14);
}

TEST(Coupling, OraclePreconditionsAndConvergence) {
  EXPECT_THROW(coupling_oracle(5, 5, 0.1, 29), ValidationError);
  // A truncation that barely covers the element cannot converge at large eta.
  EXPECT_THROW(coupling_oracle(0, 0, 8.0, 20), OracleUnconverged);
}

TEST(Coupling, OracleUnitarityOnLowBlock) {
  const Eigen::MatrixXcd d = detail::truncated_displacement(0.3, 80);
  // Columns 0..3 of the full operator are normalized and mutually orthogonal.
  const Eigen::MatrixXcd cols = d.leftCols(4);
  EXPECT_LE((cols.adjoint() * cols - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Coupling, SymmetryAndPhasePattern) {
  for (double eta : {0.045, 0.3, 0.6})
    for (int n = 0; n <= 5; ++n)
      for (int m = 0; m <= 5; ++m) {
        const Complex c = coupling_element(n, m, eta);
        EXPECT_EQ(c, coupling_element(m, n, eta));
        EXPECT_LE(std::abs(c), 1.0 + 1e-12);
        if ((n - m) % 2 == 0) EXPECT_EQ(c.imag(), 0.0);
        else EXPECT_EQ(c.real(), 0.0);
      }
}

TEST(Coupling, MatrixBasics) {
  const CouplingMatrix z = coupling_matrix(3, 0.0);
  EXPECT_LE((z.elements - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 0.0);
  const CouplingMatrix c = coupling_matrix(3, 0.3);
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m)
      EXPECT_LE(std::abs(c(n, m) * std::exp(-0.045) - coupling_oracle(n, m, 0.3, 60)), 1e-10);
  EXPECT_THROW(coupling_matrix(21, 0.1), ValidationError);
  EXPECT_THROW(coupling_element(-1, 0, 0.1), ValidationError);
  EXPECT_THROW(coupling_element(0, 0, -0.1), ValidationError);
}
