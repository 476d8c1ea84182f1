// Command-line driver: config validation, single runs, energy reports and
// the two singular-limit ladder studies. All artifacts land under --out.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bresse/io.hpp"

namespace fs = std::filesystem;
using namespace bresse;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::string out = "out";
  double t_end = 10.0;
  double h = 0.05;
  double cfl = 0.5;
  int smooth_window = 1;
  std::vector<double> values;
  std::vector<double> probes{2.0, 6.0};
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_values) {
  cmd->add_option("--config", o.config_path, "configuration file (JSON)");
  cmd->add_option("--preset", o.preset, "builtin preset: sl1 or sl2");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--t-end", o.t_end, "final time");
  cmd->add_option("--h", o.h, "target grid spacing");
  cmd->add_option("--cfl", o.cfl, "CFL safety factor in (0,1]");
  cmd->add_option("--smooth", o.smooth_window, "odd moving-average window");
  cmd->add_option("--probes", o.probes, "probe cross-sections")->delimiter(',');
  if (with_values)
    cmd->add_option("--values", o.values, "ladder values")->delimiter(',');
}

ParsedConfig load_config(const CommonOpts& o, const std::string& fallback_preset) {
  if (!o.config_path.empty() && !o.preset.empty())
    throw config_error("--config and --preset are mutually exclusive");
  if (!o.config_path.empty()) return parse_config(o.config_path);
  return builtin_config(o.preset.empty() ? fallback_preset : o.preset);
}

InitialData initial_for(const ParsedConfig& pc) {
  const std::string& p = pc.cfg.nonlinearity.preset;
  if (p == "sl1") return initial_sl1();
  if (p == "sl2") return initial_sl2();
  return initial_zero();
}

int fail(const std::string& kind, const std::string& what) {
  json err{{"error", kind}, {"detail", what}};
  std::cout << err.dump() << "\n";
  return 1;
}

RunManifest base_manifest(const ParsedConfig& pc, const Grid* grid) {
  RunManifest m;
  m.config_hash = pc.hash();
  if (grid) {
    m.grid_n = grid->n;
    m.grid_h = grid->h;
    m.i_interface = grid->i_interface;
  }
  return m;
}

int run_single(const CommonOpts& o, bool energy_only) {
  const auto t0 = std::chrono::steady_clock::now();
  ParsedConfig pc = load_config(o, "sl1");
  for (const auto& w : pc.warnings) std::cerr << "warning: " << w << "\n";

  Grid grid;
  RunManifest m = base_manifest(pc, nullptr);
  m.scheme = "explicit-two-stage";
  const fs::path out(o.out);
  try {
    grid = build_grid(pc.cfg.L, pc.cfg.L0, o.h, o.probes);
    m = base_manifest(pc, &grid);
    m.scheme = "explicit-two-stage";
    IntegratorConfig icfg = pc.integrator;
    icfg.t_end = o.t_end;
    icfg.cfl_safety = o.cfl;
    icfg.output_stride =
        std::max(1, (int)std::llround(0.02 / cfl_dt(pc.cfg, grid.h, o.cfl)));
    Trajectory traj = simulate(pc.cfg, grid, icfg, initial_for(pc));
    m.dt = traj.dt;
    if (energy_only) {
      write_text_file(out / "energy.csv", energy_csv(traj.energy));
    } else {
      write_trajectory_artifacts(out, traj);
    }
    m.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out / "run_manifest.json", m);

    double max_resid = 0.0;
    bool lyapunov_monotone = true;
    for (size_t i = 0; i < traj.energy.size(); ++i) {
      max_resid = std::max(max_resid, std::abs(traj.energy[i].balance_residual));
      if (i > 0 && traj.energy[i].lyapunov >
                       traj.energy[i - 1].lyapunov +
                           1e-8 * (1.0 + std::abs(traj.energy[i - 1].lyapunov)))
        lyapunov_monotone = false;
    }
    std::cout << "steps=" << traj.n_steps << " dt=" << gshort(traj.dt)
              << " max_interface_residual=" << gshort(traj.max_interface_residual)
              << " max_balance_residual=" << gshort(max_resid)
              << " lyapunov_monotone=" << (lyapunov_monotone ? "yes" : "no")
              << "\n";
    return 0;
  } catch (const std::exception& e) {
    m.exit_status = e.what();
    m.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out / "run_manifest.json", m);
    return fail("run-failed", e.what());
  }
}

int run_ladder(const CommonOpts& o, LadderKind kind) {
  const auto t0 = std::chrono::steady_clock::now();
  const bool is_l = kind == LadderKind::curvature;
  ParsedConfig pc = load_config(o, is_l ? "sl1" : "sl2");
  for (const auto& w : pc.warnings) std::cerr << "warning: " << w << "\n";
  if (!pc.cfg.nonlinearity.decoupled)
    return fail("config-invalid",
                "ladder studies require componentwise-decoupled nonlinearities");

  LadderSpec spec = pc.has_ladder && ((pc.ladder.kind == kind))
                        ? pc.ladder
                        : (is_l ? l_ladder_spec() : chi_ladder_spec());
  if (!o.values.empty()) spec.values = o.values;
  spec.t_end = o.t_end;
  spec.h = o.h;
  spec.cfl_safety = o.cfl;
  spec.smoothing_window = o.smooth_window;
  spec.probes = o.probes;

  const fs::path out(o.out);
  RunManifest m = base_manifest(pc, nullptr);
  m.scheme = "explicit-two-stage";
  try {
    const InitialData init = initial_for(pc);
    LadderResult R = is_l ? run_l_ladder(spec, pc.cfg, init)
                          : run_chi_ladder(spec, pc.cfg, init);
    m.grid_n = R.grid.n;
    m.grid_h = R.grid.h;
    m.i_interface = R.grid.i_interface;
    write_ladder_artifacts(out, R, pc.hash());
    for (const auto& w : R.warnings) std::cerr << "warning: " << w << "\n";
    m.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool hard_failure = R.aborted || !R.limit_error.empty();
    if (!is_l) {
      // only a failed non-terminal rung (or the reference) is fatal here
      hard_failure = !R.limit_error.empty();
      for (size_t i = 0; i + 1 < R.rung_errors.size(); ++i)
        if (!R.rung_errors[i].empty()) hard_failure = true;
    }
    m.exit_status = hard_failure ? "ladder-failed" : "ok";
    write_manifest(out / "run_manifest.json", m);
    if (hard_failure)
      return fail("ladder-failed",
                  !R.limit_error.empty() ? R.limit_error : "rung failures");

    for (const auto& row : R.table)
      std::cout << (is_l ? "l=" : "chi=") << gshort(row.value) << " x="
                << gshort(row.probe) << " field=" << row.field
                << " distance=" << g17(row.distance) << "\n";
    return 0;
  } catch (const std::exception& e) {
    m.exit_status = e.what();
    m.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out / "run_manifest.json", m);
    return fail("ladder-failed", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composite curved-beam transmission simulator"};
  app.require_subcommand(1);

  CommonOpts o_sim, o_energy, o_ll, o_lchi, o_val;
  auto* sim = app.add_subcommand("simulate", "run the coupled simulator");
  add_common(sim, o_sim, false);
  auto* energy = app.add_subcommand("energy-report", "run and emit the energy ledger");
  add_common(energy, o_energy, false);
  auto* ll = app.add_subcommand("limit-l", "curvature-ladder convergence study");
  add_common(ll, o_ll, true);
  o_ll.t_end = 10.0;
  auto* lchi = app.add_subcommand("limit-chi", "stiffness-ladder convergence study");
  add_common(lchi, o_lchi, true);
  o_lchi.t_end = 5.0;
  auto* val = app.add_subcommand("validate-config", "parse and validate a configuration");
  add_common(val, o_val, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return run_single(o_sim, false);
    if (energy->parsed()) return run_single(o_energy, true);
    if (ll->parsed()) return run_ladder(o_ll, LadderKind::curvature);
    if (lchi->parsed()) return run_ladder(o_lchi, LadderKind::stiffness);
    if (val->parsed()) {
      ParsedConfig pc = load_config(o_val, "sl1");
      for (const auto& w : pc.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "ok hash=" << pc.hash()
                << " equal_speed=" << (pc.cfg.equal_speed_flag() ? "yes" : "no")
                << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    return fail("error", e.what());
  }
  return 0;
}
