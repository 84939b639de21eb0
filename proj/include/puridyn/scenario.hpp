#pragma once

#include <optional>
#include <string>
#include <vector>

#include "puridyn/continuity.hpp"
#include "puridyn/field2.hpp"
#include "puridyn/grid.hpp"
#include "puridyn/potential.hpp"
#include "puridyn/propagator.hpp"

namespace puridyn {

enum class StateKind { product_gaussian, double_gaussian, schmidt_two_term };

struct InitialStateSpec {
  StateKind kind = StateKind::product_gaussian;
  // product_gaussian; |psi|^2 has variance sigma^2 per axis. Momenta are
  // rounded to the nearest grid-admissible wavenumber 2 pi k / L so the
  // state stays smooth on the torus.
  double sigma_x = 0.9;
  double sigma_y = 0.9;
  double center_x = 0.0;
  double center_y = 0.0;
  double momentum_x = 0.0;
  double momentum_y = 0.0;
  // double_gaussian widths of the (x - y) and (x + y) Gaussian factors.
  double a = 1.0;
  double b = 2.0;
  // schmidt_two_term weight of the first mode and the two Hermite mode
  // indices; modes are orthonormalized on the grid.
  double lambda0 = 0.5;
  int mode0 = 0;
  int mode1 = 1;
  double mode_scale = 1.0;
};

enum class PotentialSpecKind { none, separable, bilinear, gaussian_coupling };

struct PotentialSpec {
  PotentialSpecKind kind = PotentialSpecKind::none;
  // separable V = f_scale x^2 + g_scale y^2 (harmonic is the only f_kind /
  // g_kind currently defined).
  std::string f_kind = "harmonic";
  std::string g_kind = "harmonic";
  double f_scale = 0.5;
  double g_scale = 0.5;
  // bilinear V = kappa x y
  double kappa = 0.5;
  // gaussian_coupling V = v0 exp(-(x-y)^2 / width^2)
  double v0 = 1.0;
  double width = 2.0;
};

struct OutputSpec {
  std::string timeseries_path;
  std::string report_path;
  std::string dump_path;
  std::size_t dump_every = 0;  // 0 disables field dumps
};

struct GridSpec {
  std::size_t n = 0;
  double length = 0.0;
};

struct ScenarioConfig {
  GridSpec grid;
  PhysParams phys;
  InitialStateSpec initial_state;
  PotentialSpec potential;
  EvolutionSpec evolution;
  OutputSpec outputs;
};

/// Parses the flat `section.key = value` format ('#' comments, blank lines
/// ignored, keys case-sensitive). All problems are collected and thrown
/// together as one ConfigError; validation failures carry the line number
/// of the offending key.
ScenarioConfig parse_config(const std::string& text);

/// Canonical text form; parse_config(render_config(c)) reproduces c.
std::string render_config(const ScenarioConfig& c);

/// Normalized state on the grid. Gaussian envelopes are periodized over the
/// 3 x 3 nearest images so the state is smooth on the torus. Fails when the
/// state does not fit: edge amplitude above 1e-5 of the maximum is an error
/// (the message suggests a sufficient grid length); above 1e-8 a warning is
/// recorded in edge_warning.
Field2C build_initial_state(const InitialStateSpec& spec, const Grid& grid,
                            std::string* edge_warning = nullptr);

Potential build_potential(const PotentialSpec& spec, const Grid& grid);

struct TimeSeriesRow {
  double t = 0.0;
  double purity = 0.0;
  double schmidt_number = 0.0;
  double concurrence = 0.0;
  double imag_total = 0.0;
  double norm = 0.0;
  double purity_rate_lhs = 0.0;
  double purity_rate_rhs = 0.0;
};

struct ScenarioResult {
  std::vector<TimeSeriesRow> rows;
  ContinuityReport initial_report;
  ContinuityReport final_report;
  std::vector<std::string> warnings;
};

/// Full run: build state and potential, evolve, record one TimeSeriesRow per
/// observed step, evaluate the continuity residual at t = 0 and at the final
/// time, and write the configured outputs. Deterministic for a fixed config.
ScenarioResult run_scenario(const ScenarioConfig& config);

}  // namespace puridyn
