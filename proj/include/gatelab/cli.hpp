#pragma once

// Batch command-line front end. Exit codes: 0 success, 1 validation error,
// 2 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gatelab/constants.hpp"
#include "gatelab/coupling.hpp"
#include "gatelab/dynamics.hpp"
#include "gatelab/errors.hpp"
#include "gatelab/gates.hpp"
#include "gatelab/io.hpp"
#include "gatelab/limits.hpp"
#include "gatelab/parallel.hpp"
#include "gatelab/scenario.hpp"
#include "gatelab/species.hpp"
#include "gatelab/thermal.hpp"

namespace gatelab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

namespace detail {

inline double hz(double angular) { return angular / constants::two_pi; }

inline int default_jobs() {
  if (const char* env = std::getenv("GATELAB_JOBS")) {
    try {
      std::size_t used = 0;
      const int j = std::stoi(env, &used);
      if (used == std::string(env).size() && j >= 1) return j;
    } catch (const std::logic_error&) {
    }
    throw ValidationError("GATELAB_JOBS must be a positive integer, got '" + std::string(env) + "'");
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// 12-significant-digit JSON number.
inline nlohmann::json jnum(double x) { return std::stod(io::format_number(x)); }

inline std::string gnuplot_script(const std::string& data_file, const std::string& y_column) {
  return "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'time (us)'\n"
         "set ylabel 'population'\nplot '" + data_file + "' using 1:'" + y_column + "' with lines\n";
}

inline void report_fields(io::Record& r, const GateReport& g, const ScenarioConfig& c) {
  const double wz = c.trap.logic_mode_frequency();
  r.add("gate", to_string(c.gate.kind));
  r.add("sideband", std::string(c.sideband == Sideband::red ? "red" : "blue"));
  r.add("eta_z", c.eta_z);
  r.add("omega_z_hz", hz(wz));
  r.add("rabi_hz", hz(g.pulse_used.rabi));
  r.add("detuning_hz", hz(g.pulse_used.detuning));
  r.add("light_shift_applied_hz", hz(g.light_shift_applied));
  r.add("duration_us", g.pulse_used.duration * 1e6);
  r.add("phase_correction_rad", g.phase_correction);
  r.add("n_max", static_cast<double>(c.n_max));
  r.add("f_min", g.f_min);
  r.add("epsilon", g.epsilon);
  r.add("converged", g.converged);
  r.add("boundary_warning", g.boundary_warning);
}

inline nlohmann::json report_json(const GateReport& g) {
  nlohmann::json j;
  j["rabi_hz"] = jnum(hz(g.pulse_used.rabi));
  j["detuning_hz"] = jnum(hz(g.pulse_used.detuning));
  j["light_shift_applied_hz"] = jnum(hz(g.light_shift_applied));
  j["duration_us"] = jnum(g.pulse_used.duration * 1e6);
  j["phase_correction_rad"] = jnum(g.phase_correction);
  j["f_min"] = jnum(g.f_min);
  j["epsilon"] = jnum(g.epsilon);
  j["converged"] = g.converged;
  return j;
}

inline void add_truncation_check(io::Record& r, const GateReport& g, const ScenarioConfig& c) {
  const GateReport wide = evaluate_gate(c.gate, c.eta_z, c.trap.logic_mode_frequency(), g.pulse_used, 7);
  r.add("epsilon_n_max_7", wide.epsilon);
  r.add("truncation_delta", std::abs(wide.epsilon - g.epsilon));
}

// ---------------------------------------------------------------------------

inline void cmd_constants(const std::string& species_file, double angle_deg, const std::string& output) {
  SpeciesRegistry reg;
  if (!species_file.empty()) reg.load_file(species_file);
  io::CsvTable t({"species", "mass_u", "wavelength_nm", "photon_factor", "angle_deg", "recoil_hz"});
  for (const auto& name : reg.names()) {
    const IonSpecies& s = reg.get(name);
    t.add_row({name, io::format_number(s.mass_u), io::format_number(s.wavelength_m * 1e9),
               std::to_string(s.photon_factor), io::format_number(angle_deg),
               io::format_number(recoil_frequency(s, angle_deg * constants::pi / 180.0))});
  }
  io::write_atomic(output, t.str());
}

inline void cmd_coupling(double eta, int n_max, bool oracle, const std::string& output) {
  const CouplingMatrix c = coupling_matrix(n_max, eta);
  std::vector<std::string> header{"n", "m", "re", "im"};
  if (oracle) header.insert(header.end(), {"oracle_re", "oracle_im"});
  io::CsvTable t(header);
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= n_max; ++m) {
      std::vector<double> row{double(n), double(m), c(n, m).real(), c(n, m).imag()};
      if (oracle) {
        // Undo the Gaussian factor so both columns share the same normalization.
        const Complex o = coupling_oracle(n, m, eta, n + m + 40) * std::exp(0.5 * eta * eta);
        row.push_back(o.real());
        row.push_back(o.imag());
      }
      t.add_numbers(row);
    }
  io::write_atomic(output, t.str());
}

inline void cmd_simulate(const std::string& config, const std::string& output, const std::string& gnuplot) {
  const ScenarioConfig c = load_scenario(config);
  const SystemBasis basis{c.n_max};
  std::vector<std::string> header{"time_us"};
  for (int i = 0; i < basis.dimension(); ++i) header.push_back("p_" + basis.label_text(i));
  header.push_back("p_excited");
  io::CsvTable t(header);
  PopulationTrace trace;
  if (c.spectators.empty()) {
    const RotatingHamiltonian h = build_hamiltonian(c.eta_z, c.trap.logic_mode_frequency(), c.pulse, basis);
    trace = population_trace(basis.state(c.initial_internal, c.initial_n), h, c.times);
  } else {
    const ThermalEnsemble e(c.thermal());
    for (const auto& w : e.warnings()) std::cerr << "warning: " << w << "\n";
    trace = e.trace(c.times);
  }
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    std::vector<double> row{trace.times[i] * 1e6};
    for (int k = 0; k < basis.dimension(); ++k) row.push_back(trace.probabilities(Eigen::Index(i), k));
    row.push_back(trace.excited_population(i));
    t.add_numbers(row);
  }
  io::write_atomic(output, t.str());
  if (!gnuplot.empty()) io::write_atomic(gnuplot, gnuplot_script(output, "p_excited"));
}

inline void cmd_fidelity(const std::string& config, bool check, const std::string& output) {
  const ScenarioConfig c = load_scenario(config);
  const GateReport g = evaluate_gate(c.gate, c.eta_z, c.trap.logic_mode_frequency(), c.pulse, c.n_max);
  io::Record r;
  report_fields(r, g, c);
  if (check) add_truncation_check(r, g, c);
  io::write_atomic(output, r.str());
}

struct OptimizeArgs {
  std::string config;
  std::vector<std::string> free{"detuning"};
  std::vector<double> detuning_offset_khz;  // lo hi, relative to the bare transition
  std::vector<double> duration_scale{0.8, 1.3};
  int grid = 41;
  std::string objective = "epsilon";
  bool check = false;
  std::string output = "-";
};

inline void cmd_optimize(const OptimizeArgs& a) {
  const ScenarioConfig c = load_scenario(a.config);
  const double wz = c.trap.logic_mode_frequency();
  const double bare = c.gate.transition.bare_detuning(wz);
  bool free_detuning = false, free_duration = false;
  for (const auto& f : a.free) {
    if (f == "detuning") free_detuning = true;
    else if (f == "duration") free_duration = true;
    else throw ValidationError("optimize: --free accepts detuning and duration");
  }
  OptimizeOptions o;
  o.grid_points = a.grid;
  if (free_detuning) {
    if (a.detuning_offset_khz.empty()) {
      const double center = c.pulse.detuning;
      const double width = std::max(light_shift_analytic(c.eta_z, wz, c.pulse.rabi), c.eta_z * c.pulse.rabi);
      o.detuning = SearchRange{center - width, center + width};
    } else {
      const double k = constants::two_pi * 1e3;
      o.detuning = SearchRange{bare + a.detuning_offset_khz[0] * k, bare + a.detuning_offset_khz[1] * k};
    }
  }
  if (free_duration)
    o.duration = SearchRange{a.duration_scale[0] * c.pulse.duration, a.duration_scale[1] * c.pulse.duration};

  io::Record r;
  if (a.objective == "epsilon") {
    const GateReport g = optimize_pulse(c.gate, c.eta_z, wz, c.pulse, o, c.n_max);
    report_fields(r, g, c);
    r.add("objective", std::string("epsilon"));
    if (a.check) add_truncation_check(r, g, c);
    if (g.boundary_warning) std::cerr << "warning: optimum lies on the search-range boundary\n";
  } else if (a.objective == "contrast") {
    gatelab::detail::require(free_detuning && !free_duration, "optimize: contrast objective frees detuning only");
    const ThermalScenario s = c.thermal();
    const DetuningOptimum opt = optimize_contrast_detuning(s, *o.detuning, a.grid);
    PulseSpec p = c.pulse;
    p.detuning = opt.detuning;
    GateReport g = evaluate_gate(c.gate, c.eta_z, wz, p, c.n_max);
    g.boundary_warning = opt.boundary_warning;
    report_fields(r, g, c);
    r.add("objective", std::string("contrast"));
    r.add("pi_contrast", opt.contrast.pi_contrast);
    r.add("pi_peak_time_us", opt.contrast.pi_peak_time * 1e6);
    if (opt.boundary_warning) std::cerr << "warning: optimum lies on the search-range boundary\n";
  } else {
    throw ValidationError("optimize: --objective must be epsilon or contrast");
  }
  io::write_atomic(a.output, r.str());
}

struct LimitsArgs {
  double epsilon = 0.1;
  bool table3 = false;
  double spacing_lambdas = 10.0;
  std::vector<std::string> species;
  std::string species_file;
  double omega_z_khz = 1850.0;
  int ion_count = 1;
  double angle_deg = 45.0;
  std::string output = "-";
};

inline void cmd_limits(const LimitsArgs& a) {
  SpeciesRegistry reg;
  if (!a.species_file.empty()) reg.load_file(a.species_file);
  const std::vector<std::string> names = a.species.empty() ? reg.names() : a.species;
  gatelab::detail::require(a.spacing_lambdas > 0.0, "limits: --spacing-lambdas must be positive");
  if (a.table3) {
    io::CsvTable t({"species", "wavelength_nm", "mass_u", "epsilon", "spacing_um", "recoil_hz",
                    "max_cm_frequency_n2_hz", "gate_time_per_ion_us"});
    for (const auto& name : names) {
      const IonSpecies& s = reg.get(name);
      const double spacing = a.spacing_lambdas * s.wavelength_m;
      t.add_row({name, io::format_number(s.wavelength_m * 1e9), io::format_number(s.mass_u),
                 io::format_number(a.epsilon), io::format_number(spacing * 1e6),
                 io::format_number(recoil_frequency(s, constants::pi / 4.0)),
                 io::format_number(hz(max_cm_frequency(spacing, 2, s.mass_kg()))),
                 io::format_number(gate_time_per_ion(s, a.epsilon, spacing) * 1e6)});
    }
    io::write_atomic(a.output, t.str());
    return;
  }
  const double wz = constants::two_pi * 1e3 * a.omega_z_khz;
  gatelab::detail::require(wz > 0.0, "limits: --omega-z-khz must be positive");
  io::CsvTable t({"species", "epsilon", "ion_count", "omega_z_hz", "recoil_hz", "eta_z", "swap_uncorrected_hz",
                  "swap_corrected_hz", "cz_aux_corrected_hz", "monroe_hz", "monroe_capped",
                  "noise_tolerance_swap", "noise_tolerance_monroe"});
  for (const auto& name : names) {
    const IonSpecies& s = reg.get(name);
    const double recoil = recoil_frequency(s, a.angle_deg * constants::pi / 180.0);
    const double eta = lamb_dicke_single(recoil, wz, a.ion_count);
    const auto reports = speed_limits(a.epsilon, recoil, a.ion_count, wz, s.mass_kg());
    const bool capped = reports[3].governing_formula == "monroe_recoil_cap";
    const double tol_monroe =
        eta > 0.0 ? intensity_noise_tolerance(GateKind::monroe_cx, a.epsilon, eta) : 0.0;
    t.add_row({name, io::format_number(a.epsilon), std::to_string(a.ion_count), io::format_number(hz(wz)),
               io::format_number(recoil), io::format_number(eta), io::format_number(reports[0].max_rate_hz),
               io::format_number(reports[1].max_rate_hz), io::format_number(reports[2].max_rate_hz),
               io::format_number(reports[3].max_rate_hz), capped ? "true" : "false",
               io::format_number(a.epsilon), io::format_number(tol_monroe)});
  }
  io::write_atomic(a.output, t.str());
}

struct FitArgs {
  std::string scenario;
  std::string output;  // trace CSV, optional
  std::string summary = "-";
  std::string gnuplot;
  int points = 601;
};

inline void cmd_fit(const FitArgs& a) {
  gatelab::detail::require(a.points >= 2, "fit: --points must be >= 2");
  ThermalScenario s = preset_scenario(a.scenario);
  const double bare = TransitionTarget{s.transition, 0}.bare_detuning(s.omega_z);
  io::Record r;
  r.add("scenario", a.scenario);
  bool boundary = false;
  if (a.scenario == "fig4") {
    const DetuningOptimum opt = optimize_contrast_detuning(s, preset_detuning_window(s));
    s.detuning = opt.detuning;
    boundary = opt.boundary_warning;
    if (boundary) std::cerr << "warning: optimum lies on the search-range boundary\n";
  }
  const ThermalEnsemble e(s);
  for (const auto& w : e.warnings()) std::cerr << "warning: " << w << "\n";
  const ContrastSummary cs = contrast_summary(e, s.pi_time());
  r.add("rabi_hz", hz(s.rabi));
  r.add("eta_z", s.eta_z);
  r.add("omega_z_hz", hz(s.omega_z));
  r.add("detuning_offset_hz", hz(s.detuning - bare));
  for (const auto& m : s.spectators) {
    r.add("spectator_" + m.name + "_eta", m.eta);
    r.add("spectator_" + m.name + "_omega_hz", hz(m.omega));
    r.add("spectator_" + m.name + "_nbar", m.mean_occupation);
  }
  r.add("occupation_tuples", static_cast<double>(e.size()));
  r.add("pi_time_us", cs.pi_time * 1e6);
  r.add("pi_peak_time_us", cs.pi_peak_time * 1e6);
  r.add("pi_contrast", cs.pi_contrast);
  r.add("two_pi_contrast", cs.two_pi_contrast);
  if (s.transition != TransitionKind::carrier) {
    // Gate imprecision of the same pulse with cold spectators, for comparison with the contrast.
    const Sideband sb = s.transition == TransitionKind::red_sideband ? Sideband::red : Sideband::blue;
    const GateReport g =
        evaluate_gate(GateSpec::swap(sb), s.eta_z, s.omega_z, {s.rabi, s.detuning, 0.0, cs.pi_peak_time}, 3);
    r.add("swap_epsilon_cold", g.epsilon);
    r.add("swap_fidelity_cold", g.f_min);
  }
  r.add("boundary_warning", boundary);
  if (!a.output.empty()) {
    const std::vector<double> times = time_grid(3.0 * s.pi_time(), a.points);
    const PopulationTrace tr = e.trace(times);
    io::CsvTable t({"time_us", "p_excited"});
    for (std::size_t i = 0; i < times.size(); ++i) t.add_numbers({times[i] * 1e6, tr.excited_population(i)});
    io::write_atomic(a.output, t.str());
    if (!a.gnuplot.empty()) io::write_atomic(a.gnuplot, gnuplot_script(a.output, "p_excited"));
  }
  io::write_atomic(a.summary, r.str());
}

/// Evaluate the Cartesian product of the sweep axes; rows ordered by axis index.
inline std::string sweep_lines(const ScenarioConfig& base, const std::filesystem::path& base_dir, int jobs) {
  const auto& axes = base.sweep;
  gatelab::detail::require(!axes.empty() && axes.size() <= 2, "sweep: one or two axes required");
  const int n1 = axes[0].steps;
  const int n2 = axes.size() > 1 ? axes[1].steps : 1;
  const std::size_t total = static_cast<std::size_t>(n1) * n2;
  std::vector<std::string> rows(total);
  parallel_for(total, jobs, [&](std::size_t k) {
    const int i = static_cast<int>(k) / n2;
    const int j = static_cast<int>(k) % n2;
    nlohmann::json row;
    row["index"] = axes.size() > 1 ? nlohmann::json::array({i, j}) : nlohmann::json::array({i});
    row[axes[0].key] = jnum(axes[0].value(i));
    if (axes.size() > 1) row[axes[1].key] = jnum(axes[1].value(j));
    try {
      ScenarioConfig c = with_override(base, axes[0].key, axes[0].value(i), base_dir);
      if (axes.size() > 1) c = with_override(c, axes[1].key, axes[1].value(j), base_dir);
      const GateReport g = evaluate_gate(c.gate, c.eta_z, c.trap.logic_mode_frequency(), c.pulse, c.n_max);
      row.update(report_json(g));
    } catch (const ValidationError& e) {
      row["error"] = std::string("validation: ") + e.what();
    } catch (const std::exception& e) {
      row["error"] = std::string("numerical: ") + e.what();
    }
    rows[k] = row.dump() + "\n";
  });
  std::string out;
  for (const auto& r : rows) out += r;
  return out;
}

inline void cmd_sweep(const std::string& config, int jobs, const std::string& output) {
  const ScenarioConfig c = load_scenario(config);
  gatelab::detail::require(!c.sweep.empty(), "sweep: config has no [sweep] section");
  const std::string lines = sweep_lines(c, std::filesystem::path(config).parent_path(), jobs);
  std::size_t failures = 0;
  for (std::size_t p = lines.find("\"error\""); p != std::string::npos; p = lines.find("\"error\"", p + 1))
    ++failures;
  if (failures) std::cerr << "warning: " << failures << " sweep point(s) failed\n";
  io::write_atomic(output, lines);
}

}  // namespace detail

/// Parse argv and dispatch one subcommand.
inline int run(int argc, const char* const* argv) {
  CLI::App app{"gatelab: trapped-ion gate simulation"};
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = 0;
  app.add_option("--jobs", jobs, "Parallel workers (default: GATELAB_JOBS or core count)")
      ->check(CLI::PositiveNumber);

  std::string output = "-";
  std::string config;
  std::string species_file;
  std::string gnuplot;

  auto* constants_cmd = app.add_subcommand("constants", "Recoil frequencies of the known species");
  double angle_deg = 45.0;
  constants_cmd->add_option("--angle-deg", angle_deg, "Beam angle to the trap axis")->check(CLI::Range(0.0, 180.0));
  constants_cmd->add_option("--species-file", species_file, "Extra species (INI)")->check(CLI::ExistingFile);
  constants_cmd->add_option("-o,--output", output, "Output path ('-' for stdout)");

  auto* coupling_cmd = app.add_subcommand("coupling", "Coupling matrix C_nm");
  double eta = 0.0;
  int n_max = 3;
  bool oracle = false;
  coupling_cmd->add_option("--eta", eta, "Lamb-Dicke parameter")->required()->check(CLI::NonNegativeNumber);
  coupling_cmd->add_option("--nmax", n_max, "Highest Fock level")->check(CLI::Range(0, kMaxVibrationalLevel));
  coupling_cmd->add_flag("--oracle", oracle, "Add brute-force displacement-operator columns");
  coupling_cmd->add_option("-o,--output", output, "Output path ('-' for stdout)");

  auto* simulate_cmd = app.add_subcommand("simulate", "Population trace for a scenario");
  simulate_cmd->add_option("-c,--config", config, "Scenario file")->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("-o,--output", output, "Output path ('-' for stdout)");
  simulate_cmd->add_option("--gnuplot", gnuplot, "Also write a gnuplot script");

  auto* fidelity_cmd = app.add_subcommand("fidelity", "Gate imprecision for a scenario");
  bool check = false;
  fidelity_cmd->add_option("-c,--config", config, "Scenario file")->required()->check(CLI::ExistingFile);
  fidelity_cmd->add_flag("--check-truncation", check, "Re-evaluate with n_max = 7");
  fidelity_cmd->add_option("-o,--output", output, "Output path ('-' for stdout)");

  auto* optimize_cmd = app.add_subcommand("optimize", "Optimize pulse detuning and/or duration");
  detail::OptimizeArgs opt;
  optimize_cmd->add_option("-c,--config", opt.config, "Scenario file")->required()->check(CLI::ExistingFile);
  optimize_cmd->add_option("--free", opt.free, "Free parameters: detuning, duration")->delimiter(',');
  optimize_cmd->add_option("--detuning-offset-khz", opt.detuning_offset_khz,
                           "Search range lo hi, relative to the bare transition")
      ->expected(2);
  optimize_cmd->add_option("--duration-scale", opt.duration_scale, "Search range lo hi, relative to the default")
      ->expected(2);
  optimize_cmd->add_option("--grid", opt.grid, "Coarse grid points per axis")->check(CLI::Range(3, 100000));
  optimize_cmd->add_option("--objective", opt.objective, "epsilon or contrast");
  optimize_cmd->add_flag("--check-truncation", opt.check, "Re-evaluate with n_max = 7");
  optimize_cmd->add_option("-o,--output", opt.output, "Output path ('-' for stdout)");

  auto* limits_cmd = app.add_subcommand("limits", "Closed-form speed limits");
  detail::LimitsArgs lim;
  limits_cmd->add_option("--epsilon", lim.epsilon, "Target imprecision");
  limits_cmd->add_flag("--table3", lim.table3, "Gate time per ion at the spacing bound");
  limits_cmd->add_option("--spacing-lambdas", lim.spacing_lambdas, "Ion spacing in wavelengths");
  limits_cmd->add_option("--species", lim.species, "Species names (default: all)");
  limits_cmd->add_option("--species-file", lim.species_file, "Extra species (INI)")->check(CLI::ExistingFile);
  limits_cmd->add_option("--omega-z-khz", lim.omega_z_khz, "Axial frequency (kHz)");
  limits_cmd->add_option("--ion-count", lim.ion_count, "Ion count")->check(CLI::PositiveNumber);
  limits_cmd->add_option("--angle-deg", lim.angle_deg, "Beam angle to the trap axis")->check(CLI::Range(0.0, 180.0));
  limits_cmd->add_option("-o,--output", lim.output, "Output path ('-' for stdout)");

  auto* fit_cmd = app.add_subcommand("fit", "Thermally averaged experimental traces");
  detail::FitArgs fit;
  fit_cmd->add_option("--scenario", fit.scenario, "fig1a, fig1b, fig3 or fig4")->required();
  fit_cmd->add_option("-o,--output", fit.output, "Trace CSV path");
  fit_cmd->add_option("--summary", fit.summary, "Summary record path ('-' for stdout)");
  fit_cmd->add_option("--gnuplot", fit.gnuplot, "Also write a gnuplot script");
  fit_cmd->add_option("--points", fit.points, "Trace points");

  auto* sweep_cmd = app.add_subcommand("sweep", "Parallel parameter sweep, JSON lines");
  sweep_cmd->add_option("-c,--config", config, "Scenario file with a [sweep] section")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("-o,--output", output, "Output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (jobs == 0) jobs = detail::default_jobs();
    if (*constants_cmd) detail::cmd_constants(species_file, angle_deg, output);
    else if (*coupling_cmd) detail::cmd_coupling(eta, n_max, oracle, output);
    else if (*simulate_cmd) detail::cmd_simulate(config, output, gnuplot);
    else if (*fidelity_cmd) detail::cmd_fidelity(config, check, output);
    else if (*optimize_cmd) detail::cmd_optimize(opt);
    else if (*limits_cmd) detail::cmd_limits(lim);
    else if (*fit_cmd) detail::cmd_fit(fit);
    else if (*sweep_cmd) detail::cmd_sweep(config, jobs, output);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace gatelab::cli
