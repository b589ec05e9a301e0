#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "gatelab/constants.hpp"
#include "gatelab/dynamics.hpp"

using namespace gatelab;

namespace {

const double kKhz = constants::two_pi * 1e3;
const double kWz = 1850 * kKhz;

// Independent propagator: Pade/scaling-and-squaring exp(-iHt), then the frame phases.
Eigen::MatrixXcd oracle_propagator(const RotatingHamiltonian& h, double t) {
  const Eigen::MatrixXcd u = (Complex(0.0, -t) * h.matrix()).exp();
  Eigen::MatrixXcd p = u;
  for (Eigen::Index r = 0; r < p.rows(); ++r)
    p.row(r) *= std::exp(Complex(0.0, h.reference_diagonal()(r) * t));
  return p;
}

}  // namespace

TEST(Dynamics, BasisOrdering) {
  SystemBasis b{3};
  EXPECT_EQ(b.dimension(), 8);
  EXPECT_EQ(b.index(Internal::ground, 2), 2);
  EXPECT_EQ(b.index(Internal::excited, 0), 4);
  for (int i = 0; i < b.dimension(); ++i) {
    auto [s, n] = b.label(i);
    EXPECT_EQ(b.index(s, n), i);
  }
  EXPECT_EQ(b.label_text(5), "e1");
  EXPECT_THROW(b.index(Internal::ground, 4), ValidationError);
  EXPECT_THROW((SystemBasis{21}.validate()), ValidationError);
}

TEST(Dynamics, HamiltonianStructure) {
  const SystemBasis b{3};
  const PulseSpec p{0.2 * kWz, -kWz, 0.7, 1e-6};
  const auto h = build_hamiltonian(0.045, kWz, p, b);
  EXPECT_LE(h.hermiticity_defect(), 1e-12);
  const auto c = coupling_matrix(3, 0.045);
  EXPECT_LE(std::abs(h.matrix()(1, 4) - 0.5 * p.rabi * std::exp(Complex(0, 0.7)) * c(1, 0)), 1e-6);
  EXPECT_NEAR(h.matrix()(2, 2).real(), 2 * kWz + 0.5 * p.detuning, 1e-6);
  EXPECT_NEAR(h.matrix()(6, 6).real(), 2 * kWz - 0.5 * p.detuning, 1e-6);
  // Omega = 0: eigenvalues reproduce the reference diagonal exactly.
  const auto h0 = build_hamiltonian(0.045, kWz, {0.0, -kWz, 0.0, 0.0}, b);
  Eigen::VectorXd ref = h0.reference_diagonal();
  std::sort(ref.data(), ref.data() + ref.size());
  EXPECT_LE((h0.eigenvalues() - ref).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Dynamics, PropagatorMatchesPadeOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const SystemBasis b{1 + trial % 5};
    const PulseSpec p{u(rng) * kWz, (2 * u(rng) - 1) * 1.5 * kWz, u(rng) * 6, 0.0};
    const auto h = build_hamiltonian(0.3 * u(rng), kWz, p, b);
    const double t = u(rng) * 5e-6;
    const Propagator prop = propagate(h, t);
    EXPECT_LE((prop.matrix - oracle_propagator(h, t)).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LE(prop.unitarity_error(), 1e-10);
  }
}

TEST(Dynamics, TrivialPropagators) {
  const SystemBasis b{3};
  const auto h = build_hamiltonian(0.045, kWz, {0.3 * kWz, 0.1 * kWz, 0.0, 0.0}, b);
  EXPECT_LE((propagate(h, 0.0).matrix - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-14);
  // Omega = 0 in the computational frame is the identity at all times.
  const auto h0 = build_hamiltonian(0.045, kWz, {0.0, 0.3 * kWz, 0.0, 0.0}, b);
  EXPECT_LE((propagate(h0, 3.7e-6).matrix - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_THROW(propagate(h, -1.0), ValidationError);
}

TEST(Dynamics, CarrierPiPulseFlipsWithoutMotion) {
  const SystemBasis b{3};
  const double omega = 0.2 * kWz;
  const auto h = build_hamiltonian(0.0, kWz, {omega, 0.0, 0.0, 0.0}, b);
  const Propagator p = propagate(h, constants::pi / omega);
  for (int n = 0; n <= 3; ++n) EXPECT_NEAR(std::abs(p.element(Internal::excited, n, Internal::ground, n)), 1.0, 1e-9);
}

TEST(Dynamics, RedSidebandGapIsEtaOmega) {
  const SystemBasis b{3};
  const double eta = 0.045, omega = 0.01 * kWz;
  const auto h = build_hamiltonian(eta, kWz, {omega, -kWz, 0.0, 0.0}, b);
  // Dressed pair on |g,1>, |e,0>: the two eigenvalues with most weight there.
  const int ia = b.index(Internal::ground, 1), ib = b.index(Internal::excited, 0);
  EXPECT_NEAR(detail::pair_splitting(h, ia, ib), eta * omega, 0.01 * eta * omega);
}

TEST(Dynamics, LowPowerRedSidebandSwap) {
  const SystemBasis b{3};
  const double eta = 0.045, omega = 164 * kKhz;
  const double shift = light_shift_numeric(eta, kWz, omega, TransitionTarget::sideband(Sideband::red));
  const auto h = build_hamiltonian(eta, kWz, {omega, -kWz + shift, 0.0, 0.0}, b);
  const Propagator p = propagate(h, constants::pi / (eta * omega));
  EXPECT_GE(std::norm(p.element(Internal::excited, 0, Internal::ground, 1)), 0.99);
}

TEST(Dynamics, PopulationTraceProperties) {
  const SystemBasis b{3};
  const double omega = 0.1 * kWz;
  const auto h = build_hamiltonian(0.0, kWz, {omega, 0.0, 0.0, 0.0}, b);
  std::vector<double> t;
  for (int i = 0; i <= 50; ++i) t.push_back(i * 0.1 / omega);
  const PopulationTrace tr = population_trace(b.state(Internal::ground, 0), h, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR(tr.probabilities.row(Eigen::Index(i)).sum(), 1.0, 1e-9);
    EXPECT_NEAR(tr.excited_population(i), std::pow(std::sin(omega * t[i] / 2), 2), 1e-9);
  }
  std::vector<double> unsorted{1e-6, 0.5e-6};
  EXPECT_THROW(population_trace(b.state(Internal::ground, 0), h, unsorted), ValidationError);
}

TEST(Dynamics, ZeroRabiTraceIsConstant) {
  const SystemBasis b{3};
  const auto h = build_hamiltonian(0.045, kWz, {0.0, -kWz, 0.0, 0.0}, b);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
  psi(1) = Complex(0.6, 0.0);
  psi(4) = Complex(0.0, 0.8);
  std::vector<double> t{0.0, 1e-6, 2e-5};
  const PopulationTrace tr = population_trace(psi, h, t);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(tr.probabilities(i, 1), 0.36, 1e-12);
    EXPECT_NEAR(tr.probabilities(i, 4), 0.64, 1e-12);
  }
}

TEST(Dynamics, LightShiftAnalyticValues) {
  EXPECT_EQ(light_shift_analytic(0.045, kWz, 0.0), 0.0);
  EXPECT_NEAR(light_shift_analytic(0.0, kWz, 0.1 * kWz) / kWz, 0.0050125, 1e-10);
  EXPECT_NEAR(light_shift_analytic(0.045, kWz, 1090 * kKhz) / kKhz, 349.3, 0.5);
}

TEST(Dynamics, LightShiftNumericAgreesWithExpansion) {
  const auto red = TransitionTarget::sideband(Sideband::red);
  const auto blue = TransitionTarget::sideband(Sideband::blue);
  EXPECT_EQ(light_shift_numeric(0.045, kWz, 0.0, red), 0.0);
  for (double x : {0.05, 0.1, 0.2, 0.3}) {
    const double analytic = light_shift_analytic(0.045, kWz, x * kWz);
    EXPECT_NEAR(light_shift_numeric(0.045, kWz, x * kWz, red), analytic, 0.02 * analytic) << x;
    EXPECT_NEAR(light_shift_numeric(0.045, kWz, x * kWz, blue), -analytic, 0.02 * analytic) << x;
  }
}

TEST(Dynamics, CarrierLightShiftIsSmall) {
  const double omega = 0.3 * kWz, eta = 0.045;
  const double shift = light_shift_numeric(eta, kWz, omega, {TransitionKind::carrier, 0});
  EXPECT_LE(std::abs(shift), std::pow(eta * omega, 2) / kWz);
}

TEST(Dynamics, LightShiftPreconditions) {
  EXPECT_THROW(light_shift_numeric(0.045, kWz, 2.0 * kWz, TransitionTarget::sideband(Sideband::red)),
               ValidationError);
  EXPECT_THROW(light_shift_analytic(0.045, kWz, -1.0), ValidationError);
}
