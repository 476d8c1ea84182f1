#pragma once

// Explicit two-stage (kick-drift-kick) time integration with a CFL-derived
// step size and the per-step interface correction.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "bresse/diagnostics.hpp"
#include "bresse/errors.hpp"
#include "bresse/grid.hpp"
#include "bresse/model.hpp"
#include "bresse/operators.hpp"
#include "bresse/state.hpp"

namespace bresse {

struct IntegratorConfig {
  double cfl_safety = 0.5;
  double t_end = 1.0;
  int output_stride = 1;
  std::string scheme = "explicit-two-stage";
  double dt_override = 0.0;  // > 0: use exactly this step size
  bool record_snapshots = false;

  void validate() const {
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
      throw config_error("integrator.cfl_safety must lie in (0,1]");
    if (!(t_end >= 0.0)) throw config_error("integrator.t_end must be nonnegative");
    if (output_stride < 1) throw config_error("integrator.output_stride must be >= 1");
  }
};

/// CFL step bound: dt = safety * h / c_max, with c_max the largest of the
/// shear, bending and axial wave speeds over both segments.
inline double max_wave_speed(const BeamConfig& cfg) {
  auto seg = [](const SegmentParams& p) {
    return std::max({std::sqrt(p.k / p.rho), std::sqrt(p.lambda / p.beta),
                     std::sqrt(p.sigma / p.rho)});
  };
  return std::max(seg(cfg.left), seg(cfg.right));
}

inline double cfl_dt(const BeamConfig& cfg, double h, double safety) {
  if (!(h > 0.0)) throw parameter_error("cfl_dt: h must be positive");
  return safety * h / max_wave_speed(cfg);
}

constexpr double kBlowUpLimit = 1e12;

namespace detail {

inline void check_finite(const BeamState& s, double last_valid_t) {
  for (int f = 0; f < 3; ++f)
    for (const auto* arr : {&s.dl[f], &s.vl[f], &s.dr[f], &s.vr[f]})
      for (double v : *arr)
        if (!std::isfinite(v) || std::abs(v) > kBlowUpLimit)
          throw blow_up_error(
              "field exceeded blow-up limit after t=" + std::to_string(last_valid_t),
              last_valid_t);
}

}  // namespace detail

/// Workspace-carrying stepper so repeated steps do not allocate.
class Stepper {
 public:
  explicit Stepper(const CoupledSystem& sys) : sys_(sys) {}

  /// One explicit two-stage step (kick-drift-kick): half kick, drift, half
  /// kick with the damping argument extrapolated to the end of the step,
  /// then Dirichlet values and the interface solve on the displacements.
  /// Returns the interface residual of the solve.
  double step(BeamState& s, double dt) {
    const Grid& g = sys_.grid();
    const int I = g.i_interface, nr = g.right_size();

    sys_.accel(s.dl, s.dr, s.vl[1], acc_);
    // psi_t extrapolated to t+dt for the second-stage damping argument
    psi_tilde_.assign(s.vl[1].begin(), s.vl[1].end());
    for (int i = 1; i <= I; ++i) psi_tilde_[i] += dt * acc_.al[1][i];

    for (int f = 0; f < 3; ++f) {
      for (int i = 1; i <= I; ++i) s.vl[f][i] += 0.5 * dt * acc_.al[f][i];
      for (int j = 1; j < nr - 1; ++j) s.vr[f][j] += 0.5 * dt * acc_.ar[f][j];
      s.vr[f][0] = s.vl[f][I];  // shared junction value, one update
      for (int i = 0; i <= I; ++i) s.dl[f][i] += dt * s.vl[f][i];
      for (int j = 0; j < nr; ++j) s.dr[f][j] += dt * s.vr[f][j];
    }

    sys_.accel(s.dl, s.dr, psi_tilde_, acc2_);
    for (int f = 0; f < 3; ++f) {
      for (int i = 1; i <= I; ++i) s.vl[f][i] += 0.5 * dt * acc2_.al[f][i];
      for (int j = 1; j < nr - 1; ++j) s.vr[f][j] += 0.5 * dt * acc2_.ar[f][j];
      s.vr[f][0] = s.vl[f][I];
    }

    apply_dirichlet(s);
    const double resid = sys_.solve_interface_displacement(s).residual;
    s.t += dt;
    return resid;
  }

 private:
  const CoupledSystem& sys_;
  Accel acc_, acc2_;
  std::vector<double> psi_tilde_;
};

/// One free-standing step (spec-level operation).
inline BeamState step(const BeamState& state, const BeamConfig& cfg,
                      const Grid& grid, double dt) {
  CoupledSystem sys(cfg, grid);
  BeamState s = state;
  Stepper st(sys);
  st.step(s, dt);
  detail::check_finite(s, state.t);
  return s;
}

namespace detail {

/// Sides a probe node reports on: the junction node carries both namings.
inline std::vector<int> probe_sides(const Grid& g, int node) {
  if (node < g.i_interface) return {0};
  if (node > g.i_interface) return {1};
  return {0, 1};
}

inline void record_sample(Trajectory& traj, const BeamState& s,
                          const CoupledSystem& sys, const LoadTables& loads,
                          double diss_cum, double work_cum, double e0,
                          bool snapshots) {
  const Grid& g = sys.grid();
  traj.times.push_back(s.t);
  size_t col = 0;
  for (const auto& [px, node] : g.probe_indices) {
    (void)px;
    for (int side : probe_sides(g, node)) {
      const int idx = side == 0 ? node : node - g.i_interface;
      for (int f = 0; f < 3; ++f) {
        const double val = side == 0 ? s.dl[f][idx] : s.dr[f][idx];
        traj.columns[col++].values.push_back(val);
      }
    }
  }
  traj.energy.push_back(
      energy(s, sys.config(), g, loads, diss_cum, work_cum, e0));
  if (snapshots) traj.snapshots.push_back(s);
}

}  // namespace detail

/// Runs the coupled simulator to t_end, recording probe samples and the
/// energy ledger every `output_stride` steps. Deterministic for identical
/// inputs. Throws blow_up_error / interface_error on failure.
inline Trajectory simulate(const BeamConfig& cfg, const Grid& grid,
                           const IntegratorConfig& icfg,
                           const BeamState& initial) {
  cfg.validate();
  icfg.validate();
  CoupledSystem sys(cfg, grid);

  BeamState s = initial;
  // Boundary and continuity preconditions, then exact enforcement.
  for (int f = 0; f < 3; ++f) {
    if (std::abs(s.dl[f][0]) > 1e-9 || std::abs(s.dr[f].back()) > 1e-9 ||
        std::abs(s.vl[f][0]) > 1e-9 || std::abs(s.vr[f].back()) > 1e-9)
      throw config_error("initial data violates the clamped boundary values");
    if (std::abs(s.dl[f].back() - s.dr[f].front()) > 1e-9 ||
        std::abs(s.vl[f].back() - s.vr[f].front()) > 1e-9)
      throw config_error("initial data violates interface continuity");
  }
  apply_dirichlet(s);
  for (int f = 0; f < 3; ++f) {
    s.dr[f][0] = s.dl[f].back();
    s.vr[f][0] = s.vl[f].back();
  }

  double dt;
  long n_steps;
  if (icfg.dt_override > 0.0) {
    dt = icfg.dt_override;
    n_steps = std::llround(icfg.t_end / dt);
  } else if (icfg.t_end == 0.0) {
    dt = cfl_dt(cfg, grid.h, icfg.cfl_safety);
    n_steps = 0;
  } else {
    const double dt0 = cfl_dt(cfg, grid.h, icfg.cfl_safety);
    n_steps = (long)std::ceil(icfg.t_end / dt0 - 1e-12);
    dt = icfg.t_end / (double)n_steps;
  }

  Trajectory traj;
  traj.grid = grid;
  traj.dt = dt;
  traj.n_steps = n_steps;
  traj.scheme = icfg.scheme;
  for (const auto& [px, node] : grid.probe_indices)
    for (int side : detail::probe_sides(grid, node))
      for (int f = 0; f < 3; ++f)
        traj.columns.push_back({px, field_name(side, f), {}});

  LoadTables loads(cfg, grid);
  const double e0 = energy_parts(s, cfg, grid).total();
  double diss_cum = 0.0, work_cum = 0.0;
  double diss_rate_prev = dissipation_rate(s, cfg, grid.h);
  double work_rate_prev = work_rate(s, loads, grid.h);

  s.t = 0.0;
  detail::record_sample(traj, s, sys, loads, 0.0, 0.0, e0,
                        icfg.record_snapshots);

  Stepper stepper(sys);
  for (long k = 1; k <= n_steps; ++k) {
    const double t_prev = s.t;
    double resid;
    try {
      resid = stepper.step(s, dt);
    } catch (const interface_error&) {
      throw;
    }
    s.t = (double)k * dt;  // avoid accumulation drift
    detail::check_finite(s, t_prev);
    traj.max_interface_residual = std::max(traj.max_interface_residual, resid);

    const double diss_rate = dissipation_rate(s, cfg, grid.h);
    const double wrk_rate = work_rate(s, loads, grid.h);
    diss_cum += 0.5 * dt * (diss_rate_prev + diss_rate);
    work_cum += 0.5 * dt * (work_rate_prev + wrk_rate);
    diss_rate_prev = diss_rate;
    work_rate_prev = wrk_rate;

    if (k % icfg.output_stride == 0 || k == n_steps)
      detail::record_sample(traj, s, sys, loads, diss_cum, work_cum, e0,
                            icfg.record_snapshots);
  }
  return traj;
}

/// Convenience: build the state from initial-data functions and simulate.
inline Trajectory simulate(const BeamConfig& cfg, const Grid& grid,
                           const IntegratorConfig& icfg,
                           const InitialData& init) {
  return simulate(cfg, grid, icfg, make_state(grid, init));
}

}  // namespace bresse
