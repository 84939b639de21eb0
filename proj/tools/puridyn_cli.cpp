// Command-line front end: run / check / spectrum / selftest.
//
// Exit codes are a stable contract:
//   0 success, 2 config error, 3 numerical abort, 4 I/O error, 1 anything else.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "puridyn/cn_reference.hpp"
#include "puridyn/continuity.hpp"
#include "puridyn/errors.hpp"
#include "puridyn/io.hpp"
#include "puridyn/propagator.hpp"
#include "puridyn/purity.hpp"
#include "puridyn/scenario.hpp"

namespace {

using namespace puridyn;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_report(const char* label, const ContinuityReport& r) {
  std::printf("%s: mode=%s relative=%s linf_re=%.3e linf_im=%.3e scale=%.3e\n", label,
              r.mode == ContinuityMode::free_flow ? "free" : "interacting",
              r.relative_mode ? "yes" : "no", r.relative_linf_re(), r.relative_linf_im(),
              r.reference_scale);
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

int cmd_run(const std::string& config_path, bool dt_refine, bool dense_oracle) {
  const ScenarioConfig config = parse_config(slurp(config_path));
  std::printf("grid n=%zu length=%g  dt=%g steps=%zu\n", config.grid.n, config.grid.length,
              config.evolution.dt, config.evolution.steps);

  if (dense_oracle) {
    if (config.grid.n > 16) {
      throw ConfigError({{0, "--dense-oracle requires grid.n <= 16"}});
    }
    const Grid grid = make_grid(config.grid.n, config.grid.length);
    const Field2C psi0 = build_initial_state(config.initial_state, grid);
    const Potential v = build_potential(config.potential, grid);
    Field2C split = psi0;
    Field2C dense = psi0;
    SplitStepper stepper(grid, v, config.phys, config.evolution.dt);
    CnReference reference(grid, v, config.phys, config.evolution.dt);
    const std::size_t steps = std::min<std::size_t>(10, config.evolution.steps);
    double worst = 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
      stepper.step_inplace(split);
      dense = reference.step(dense);
      worst = std::max(worst, max_abs_diff(split, dense));
    }
    std::printf("dense oracle: %zu steps, max deviation %.3e\n", steps, worst);
    if (worst > 1e-6) {
      throw NumericalAbort("split step disagrees with the dense reference integrator");
    }
  }

  const ScenarioResult result = run_scenario(config);
  print_warnings(result.warnings);
  for (const TimeSeriesRow& r : result.rows) {
    std::printf("t=%-8.4f purity=%.12f K=%.6f C=%.6f norm=%.12f\n", r.t, r.purity,
                r.schmidt_number, r.concurrence, r.norm);
  }
  print_report("residual t=0", result.initial_report);
  print_report("residual final", result.final_report);

  if (dt_refine) {
    ScenarioConfig refined = config;
    refined.evolution.dt = config.evolution.dt / 2.0;
    refined.evolution.steps = config.evolution.steps * 2;
    refined.evolution.record_every = config.evolution.record_every * 2;
    refined.outputs = OutputSpec{};  // comparison run, no artifacts
    const ScenarioResult fine = run_scenario(refined);
    const double drift =
        std::abs(fine.rows.back().purity - result.rows.back().purity);
    std::printf("dt refinement: final purity drift %.3e at dt/2\n", drift);
    if (drift > 1e-6) {
      throw NumericalAbort("purity not converged in dt: drift above 1e-6");
    }
  }
  return 0;
}

int cmd_check(const std::string& config_path) {
  const ScenarioConfig config = parse_config(slurp(config_path));
  const Grid grid = make_grid(config.grid.n, config.grid.length);
  std::string warning;
  const Field2C psi = build_initial_state(config.initial_state, grid, &warning);
  if (!warning.empty()) std::fprintf(stderr, "warning: %s\n", warning.c_str());
  const Potential v = build_potential(config.potential, grid);

  const PurityReport purity = purity_report(psi);
  std::printf("purity: rho=%.12f schmidt=%.12f density=%.12f imag_total=%.3e\n",
              purity.pi_from_rho, purity.pi_from_schmidt, purity.pi_from_density.real(),
              purity.imag_total);
  std::printf("schmidt_number=%.6f concurrence=%.6f dcp=%.1f\n", purity.schmidt_number,
              purity.concurrence, purity.dcp);

  if (grid.n > Field4C::dense_limit) {
    std::printf("continuity residual skipped: n exceeds the dense limit (%zu)\n",
                Field4C::dense_limit);
    return 0;
  }
  if (config.potential.kind == PotentialSpecKind::none) {
    print_report("residual t=0", residual_free(psi, config.phys));
  } else {
    print_report("residual t=0", residual_interacting(psi, v, config.phys));
  }
  return 0;
}

int cmd_spectrum(const std::string& config_path) {
  const ScenarioConfig config = parse_config(slurp(config_path));
  const Grid grid = make_grid(config.grid.n, config.grid.length);
  std::string warning;
  const Field2C psi = build_initial_state(config.initial_state, grid, &warning);
  if (!warning.empty()) std::fprintf(stderr, "warning: %s\n", warning.c_str());

  const SchmidtSpectrum spectrum = schmidt_spectrum(psi);
  std::printf("# k lambda_k\n");
  for (std::size_t k = 0; k < spectrum.coefficients.size(); ++k) {
    if (spectrum.coefficients[k] < 1e-15 && k > 3) break;
    std::printf("%zu %.17g\n", k, spectrum.coefficients[k]);
  }
  std::printf("# purity=%.12f schmidt_number=%.6f concurrence=%.6f\n", spectrum.purity(),
              spectrum.schmidt_number(), concurrence(spectrum.purity()));
  return 0;
}

struct SelfCheck {
  const char* name;
  bool ok;
};

int cmd_selftest() {
  std::vector<SelfCheck> checks;
  const Grid grid = make_grid(24, 16.0);
  const PhysParams phys;

  InitialStateSpec product;
  product.sigma_x = 1.1;
  product.sigma_y = 1.1;
  InitialStateSpec entangled;
  entangled.kind = StateKind::double_gaussian;
  InitialStateSpec two_term;
  two_term.kind = StateKind::schmidt_two_term;

  const std::vector<std::pair<const char*, InitialStateSpec>> presets = {
      {"product_gaussian", product},
      {"double_gaussian", entangled},
      {"schmidt_two_term", two_term}};
  for (const auto& [label, spec] : presets) {
    const Field2C psi = build_initial_state(spec, grid);
    const PurityReport report = purity_report(psi);
    const bool routes_agree =
        std::abs(report.pi_from_rho - report.pi_from_schmidt) <= 1e-10 &&
        std::abs(report.pi_from_rho - report.pi_from_density.real()) <= 1e-9 &&
        std::abs(report.imag_total) <= 1e-11;
    checks.push_back({label, routes_agree});
    std::printf("[%s] %s purity route equivalence (rho=%.9f)\n",
                routes_agree ? "ok" : "FAIL", label, report.pi_from_rho);
  }

  {
    const Field2C psi = build_initial_state(product, grid);
    const ContinuityReport r = residual_free(psi, phys);
    const bool ok = r.worst_relative() <= 1e-6;
    checks.push_back({"free continuity", ok});
    std::printf("[%s] free continuity residual %.3e\n", ok ? "ok" : "FAIL",
                r.worst_relative());
  }

  {
    PotentialSpec bilinear;
    bilinear.kind = PotentialSpecKind::bilinear;
    const Potential v = build_potential(bilinear, grid);
    const Field2C psi = build_initial_state(product, grid);
    const ContinuityReport r = residual_interacting(psi, v, phys);
    const bool ok = r.worst_relative() <= 1e-6;
    checks.push_back({"interacting continuity", ok});
    std::printf("[%s] interacting continuity residual %.3e\n", ok ? "ok" : "FAIL",
                r.worst_relative());

    const PurityRate rate = purity_rate_check(psi, v, phys, 1e-3);
    const bool rate_ok =
        std::abs(rate.lhs - rate.rhs) / std::max(std::abs(rate.rhs), 1e-12) <= 1e-3 ||
        std::abs(rate.lhs - rate.rhs) <= 1e-10;
    checks.push_back({"purity rate", rate_ok});
    std::printf("[%s] purity rate lhs=%.6e rhs=%.6e\n", rate_ok ? "ok" : "FAIL", rate.lhs,
                rate.rhs);
  }

  {
    const bool ok = dcp(2, 1) == 2.0;
    checks.push_back({"dcp", ok});
    std::printf("[%s] dcp(2, 1) = 2\n", ok ? "ok" : "FAIL");
  }

  for (const SelfCheck& c : checks) {
    if (!c.ok) throw NumericalAbort(std::string("selftest failed: ") + c.name);
  }
  std::printf("selftest: %zu checks passed\n", checks.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"purity-density dynamics of a two-particle wavefunction"};
  app.require_subcommand(1);

  std::string config_path;
  bool dt_refine = false;
  bool dense_oracle = false;

  CLI::App* run = app.add_subcommand("run", "evolve a scenario and write its outputs");
  run->add_option("config", config_path, "config file")->required();
  run->add_flag("--dt-refine", dt_refine, "re-run at dt/2 and require purity convergence");
  run->add_flag("--dense-oracle", dense_oracle,
                "cross-check the first steps against the dense reference (n <= 16)");

  CLI::App* check = app.add_subcommand("check", "residual and purity reports at t=0");
  check->add_option("config", config_path, "config file")->required();

  CLI::App* spectrum = app.add_subcommand("spectrum", "Schmidt spectrum of the initial state");
  spectrum->add_option("config", config_path, "config file")->required();

  app.add_subcommand("selftest", "invariant suite on built-in presets");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(config_path, dt_refine, dense_oracle);
    if (check->parsed()) return cmd_check(config_path);
    if (spectrum->parsed()) return cmd_spectrum(config_path);
    return cmd_selftest();
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const puridyn::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const puridyn::InvalidArgument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return 2;
  } catch (const puridyn::NumericalAbort& e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return 3;
  } catch (const puridyn::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
