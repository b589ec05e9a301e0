#include <gtest/gtest.h>

#include <cmath>

#include "gatelab/thermal.hpp"

using namespace gatelab;

namespace {
const double kKhz = constants::two_pi * 1e3;
}  // namespace

TEST(Thermal, WeightsGroundState) {
  const auto w = thermal_weights(0.0);
  ASSERT_EQ(w.probabilities.size(), 1u);
  EXPECT_DOUBLE_EQ(w.probabilities[0], 1.0);
}

TEST(Thermal, WeightsMeanAndCutoff) {
  for (double nb : {0.5, 5.0, 12.0, 25.0}) {
    const auto w = thermal_weights(nb);
    double total = 0.0;
    for (double p : w.probabilities) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
    // Truncation at tail mass 1e-4 shifts the mean by less than the dropped tail's contribution.
    EXPECT_NEAR(w.mean(), nb, 1e-4 * (w.n_cut() + nb + 1) * 2) << nb;
    // Tail beyond n_cut is q^(n_cut+1), below the cutoff; one level earlier it is not.
    const double q = nb / (nb + 1);
    EXPECT_LT(std::pow(q, w.n_cut() + 1), 1e-4);
    EXPECT_GE(std::pow(q, w.n_cut()), 1e-4);
  }
  EXPECT_NEAR(thermal_weights(12.0).n_cut(), 110, 10);
  EXPECT_THROW(thermal_weights(-1.0), ValidationError);
}

TEST(Thermal, ScaledRabi) {
  const Complex base(0.0, 2.5);
  EXPECT_EQ(scaled_rabi(0, 0, 0.04, 0.01, base), base);
  EXPECT_NEAR(std::abs(scaled_rabi(12, 0, 0.04, 0.01, Complex(1.0))), 0.9808, 1e-12);
  EXPECT_THROW(scaled_rabi(700, 0, 0.04, 0.01, base), ValidationError);
  EXPECT_NO_THROW(scaled_rabi(700, 0, 0.04, 0.01, base, RabiScaling::exact));
}

TEST(Thermal, ExactScalingIsLaguerreDiagonal) {
  for (int n : {0, 1, 5, 12, 20})
    for (double eta : {0.01, 0.04, 0.3})
      EXPECT_NEAR(spectator_factor(n, eta, RabiScaling::exact), coupling_element(n, n, eta).real(), 1e-12);
  // First order and exact agree for n eta^2 <= 0.05.
  for (int n : {1, 10, 31})
    EXPECT_NEAR(spectator_factor(n, 0.04, RabiScaling::exact), spectator_factor(n, 0.04, RabiScaling::first_order),
                1e-3);
}

TEST(Thermal, SpectatorShift) {
  const double s0 = spectator_light_shift(0, 0.01, 1090 * kKhz, 75 * kKhz);
  EXPECT_NEAR(s0 / kKhz, 0.8, 0.02);
  EXPECT_NEAR(spectator_light_shift(24, 0.01, 1090 * kKhz, 75 * kKhz), 25 * s0, 1e-9 * s0);
  EXPECT_NEAR(25 * s0 / kKhz, 20, 0.5);
  EXPECT_EQ(spectator_light_shift(3, 0.01, 0.0, 75 * kKhz), 0.0);
  std::vector<std::string> warnings;
  spectator_light_shift(0, 0.01, 1090 * kKhz, 10 * kKhz, 1850 * kKhz, &warnings);
  EXPECT_EQ(warnings.size(), 0u);
  spectator_light_shift(0, 0.01, 1090 * kKhz, 1e-3 * kKhz, 1850 * kKhz, &warnings);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_THROW(spectator_light_shift(0, 0.01, 1090 * kKhz, 0.0), ValidationError);
}

TEST(Thermal, JointOccupationsKeepMass) {
  std::vector<ThermalMode> modes{{"x", 0.04, 4000 * kKhz, 12.0}, {"y", 0.01, 1925 * kKhz, 25.0}};
  const auto tuples = joint_occupations(modes, 1e-4);
  double total = 0.0;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    total += tuples[i].weight;
    if (i) EXPECT_GE(tuples[i - 1].weight, tuples[i].weight);
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(tuples.front().n, (std::vector<int>{0, 0}));
}

TEST(Thermal, ColdSpectatorsReproduceSingleTrace) {
  ThermalScenario s = preset_scenario("fig3");
  for (auto& m : s.spectators) m.mean_occupation = 0.0;
  // With n = 0 spectators the only effect left is the vacuum spectator shift.
  const PulseSpec p = occupation_pulse(s, {0});
  const auto h = build_hamiltonian(s.eta_z, s.omega_z, p, SystemBasis{s.n_max});
  const std::vector<double> t = time_grid(3 * s.pi_time(), 101);
  const auto single = population_trace(SystemBasis{s.n_max}.state(Internal::ground, 0), h, t);
  const auto averaged = thermal_average_trace(s, t);
  EXPECT_LE((single.probabilities - averaged.probabilities).cwiseAbs().maxCoeff(), 1e-12);
  ThermalScenario none = s;
  none.spectators.clear();
  const auto h0 = build_hamiltonian(s.eta_z, s.omega_z, {s.rabi, s.detuning, 0.0, 0.0}, SystemBasis{s.n_max});
  const auto plain = population_trace(SystemBasis{s.n_max}.state(Internal::ground, 0), h0, t);
  EXPECT_LE((plain.probabilities - thermal_average_trace(none, t).probabilities).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Thermal, AveragedTracesNormalized) {
  for (const char* name : {"fig1a", "fig1b", "fig3"}) {
    const ThermalScenario s = preset_scenario(name);
    const auto tr = thermal_average_trace(s, time_grid(3 * s.pi_time(), 301));
    for (Eigen::Index i = 0; i < tr.probabilities.rows(); ++i) {
      EXPECT_NEAR(tr.probabilities.row(i).sum(), 1.0, 1e-8);
      EXPECT_GE(tr.probabilities.row(i).minCoeff(), -1e-12);
      EXPECT_LE(tr.probabilities.row(i).maxCoeff(), 1.0 + 1e-12);
    }
  }
}

TEST(Thermal, CutoffConvergence) {
  ThermalScenario s = preset_scenario("fig3");
  const std::vector<double> t = time_grid(3 * s.pi_time(), 301);
  const auto a = thermal_average_trace(s, t);
  s.tail_mass /= 2;
  const auto b = thermal_average_trace(s, t);
  EXPECT_LT((a.probabilities - b.probabilities).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Thermal, ContrastMonotoneInOccupation) {
  for (const char* name : {"fig1a", "fig3"}) {
    double previous = 2.0;
    for (double nb : {0.0, 5.0, 12.0, 25.0}) {
      ThermalScenario s = preset_scenario(name);
      s.spectators[0].mean_occupation = nb;
      const double c = contrast_summary(s).pi_contrast;
      EXPECT_LE(c, previous + 1e-9) << name << " nbar " << nb;
      previous = c;
    }
  }
}

TEST(Thermal, Fig1aContrast) {
  const ContrastSummary c = contrast_summary(preset_scenario("fig1a"));
  EXPECT_GT(c.pi_contrast, 0.95);
  EXPECT_GT(c.two_pi_contrast, 0.95);
}

TEST(Thermal, Fig3Contrast) {
  EXPECT_NEAR(contrast_summary(preset_scenario("fig3")).pi_contrast, 0.75, 0.05);
}

TEST(Thermal, ColdOptimumDetuning) {
  const ThermalScenario s = preset_scenario("fig4");
  const DetuningOptimum o = optimize_contrast_detuning(s, preset_detuning_window(s));
  EXPECT_NEAR((o.detuning - s.omega_z) / kKhz, -355, 10);
  EXPECT_NEAR(o.contrast.pi_contrast, 0.92, 0.02);
  EXPECT_FALSE(o.boundary_warning);
  // Contrast ignores vibrational leakage, so the gate error is at least the contrast deficit.
  const PulseSpec p{s.rabi, o.detuning, 0.0, o.contrast.pi_peak_time};
  const GateReport g = evaluate_gate(GateSpec::swap(Sideband::blue), s.eta_z, s.omega_z, p);
  EXPECT_GE(g.epsilon * g.epsilon, 1.0 - o.contrast.pi_contrast);
}

TEST(Thermal, PresetErrors) {
  EXPECT_THROW(preset_scenario("fig9"), ValidationError);
  ThermalScenario s = preset_scenario("fig1a");
  s.spectators[0].mean_occupation = 2000.0;
  EXPECT_THROW(ThermalEnsemble{s}, ValidationError);
  s.scaling = RabiScaling::exact;
  s.spectators[0].mean_occupation = 30.0;
  EXPECT_NO_THROW(ThermalEnsemble{s});
}
