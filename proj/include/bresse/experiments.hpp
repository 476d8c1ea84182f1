#pragma once

// Reproduction harnesses for the two singular-limit studies: the curvature
// ladder against the straight-beam pair, and the stiffness-scaling ladder
// against the fourth-order limit. Rungs run concurrently; assembly is
// deterministic by rung index.

#include <atomic>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bresse/limits.hpp"

namespace bresse {

enum class LadderKind { curvature, stiffness };

struct LadderSpec {
  LadderKind kind = LadderKind::curvature;
  std::vector<double> values;
  std::vector<double> probes{2.0, 6.0};
  double t_end = 10.0;
  int smoothing_window = 1;
  double h = 0.05;
  double cfl_safety = 0.5;
  double record_dt = 0.02;  // common sample lattice for all rungs

  void validate() const {
    if (values.empty()) throw parameter_error("ladder: empty value list");
    bool inc = true, dec = true;
    for (size_t i = 1; i < values.size(); ++i) {
      inc = inc && values[i] > values[i - 1];
      dec = dec && values[i] < values[i - 1];
    }
    if (!inc && !dec) throw parameter_error("ladder: values must be strictly monotone");
    if (smoothing_window < 1 || smoothing_window % 2 == 0)
      throw parameter_error("ladder: smoothing_window must be odd and >= 1");
    if (!(t_end > 0.0) || !(h > 0.0) || !(record_dt > 0.0))
      throw parameter_error("ladder: t_end, h and record_dt must be positive");
    const long n = std::lround(t_end / record_dt);
    if (n < 1 || std::abs((double)n * record_dt - t_end) > 1e-9 * t_end)
      throw parameter_error("ladder: t_end must be a multiple of record_dt");
  }
};

inline LadderSpec l_ladder_spec() {
  LadderSpec s;
  s.kind = LadderKind::curvature;
  s.values = {1.0, 1.0 / 3.0, 0.1, 1.0 / 30.0, 0.01, 1.0 / 300.0, 0.001};
  s.t_end = 10.0;
  return s;
}

inline LadderSpec chi_ladder_spec() {
  LadderSpec s;
  s.kind = LadderKind::stiffness;
  s.values = {1.0, 3.0, 10.0, 30.0, 100.0, 300.0};
  s.t_end = 5.0;
  return s;
}

/// Stiffness scaling: divide the curvature by chi, multiply both shear
/// stiffnesses by chi.
inline BeamConfig scale_params_chi(const BeamConfig& base, double chi) {
  if (!(chi >= 1.0)) throw parameter_error("scale_params_chi: chi must be >= 1");
  BeamConfig c = base;
  c.l = base.l / chi;
  c.left.k = base.left.k * chi;
  c.right.k = base.right.k * chi;
  return c;
}

/// Centered moving average; endpoints use shrinking symmetric windows.
inline ProbeSeries smooth(const ProbeSeries& s, int window) {
  if (window < 1 || window % 2 == 0)
    throw parameter_error("smooth: window must be odd and >= 1");
  if ((size_t)window > s.values.size())
    throw parameter_error("smooth: window exceeds series length");
  ProbeSeries out = s;
  const int n = (int)s.values.size();
  const int half = window / 2;
  for (int i = 0; i < n; ++i) {
    const int hw = std::min({half, i, n - 1 - i});
    double acc = 0.0;
    for (int j = i - hw; j <= i + hw; ++j) acc += s.values[j];
    out.values[i] = acc / (double)(2 * hw + 1);
  }
  return out;
}

struct ConvergenceRow {
  double value = 0.0;
  double probe = 0.0;
  std::string field;
  double distance = 0.0;
};

struct LadderResult {
  LadderSpec spec;
  Grid grid;
  std::vector<std::optional<Trajectory>> rungs;  // aligned with spec.values
  std::vector<std::string> rung_errors;
  std::optional<Trajectory> limit_primary;  // straight-beam / fourth-order run
  std::optional<Trajectory> limit_wave;     // wave transmission run
  std::string limit_error;
  std::vector<ConvergenceRow> table;
  std::vector<std::string> warnings;
  bool aborted = false;
};

inline int thread_cap() {
  if (const char* env = std::getenv("BRESSE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? (int)hc : 1;
}

namespace detail {

/// Uniform step dividing the record interval exactly, below the CFL bound.
inline std::pair<double, int> aligned_dt(double c_max, double h, double safety,
                                         double record_dt) {
  const double dt0 = safety * h / c_max;
  const int m = (int)std::ceil(record_dt / dt0 - 1e-12);
  return {record_dt / (double)m, m};
}

/// Snap recorded times onto the canonical lattice k*record_dt so that rungs
/// with different step sizes share one comparable lattice.
inline void canonicalize_times(Trajectory& traj, double record_dt) {
  for (size_t i = 0; i < traj.times.size(); ++i)
    traj.times[i] = (double)i * record_dt;
}

inline Trajectory run_coupled_rung(const BeamConfig& cfg, const Grid& grid,
                                   const LadderSpec& spec,
                                   const InitialData& init) {
  const auto [dt, stride] =
      aligned_dt(max_wave_speed(cfg), grid.h, spec.cfl_safety, spec.record_dt);
  IntegratorConfig icfg;
  icfg.cfl_safety = spec.cfl_safety;
  icfg.t_end = spec.t_end;
  icfg.dt_override = dt;
  icfg.output_stride = stride;
  Trajectory t = simulate(cfg, grid, icfg, init);
  canonicalize_times(t, spec.record_dt);
  return t;
}

struct LimitSelector {
  const Trajectory* primary;
  const Trajectory* wave;
  const Trajectory& for_field(const std::string& field) const {
    if (field == "omega" || field == "w") return *wave;
    return *primary;
  }
};

inline void assemble_table(LadderResult& R) {
  if (!R.limit_primary || !R.limit_wave) return;
  LimitSelector sel{&*R.limit_primary, &*R.limit_wave};
  for (size_t vi = 0; vi < R.spec.values.size(); ++vi) {
    if (!R.rungs[vi]) continue;
    const Trajectory& run = *R.rungs[vi];
    for (double px : R.spec.probes) {
      const int node = R.grid.probe_node(px);
      const int side = node <= R.grid.i_interface ? 0 : 1;
      for (int f = 0; f < 3; ++f) {
        const std::string field = field_name(side, f);
        ProbeSeries a = probe(run, px, field);
        ProbeSeries b = probe(sel.for_field(field), px, field);
        if (R.spec.smoothing_window > 1) {
          a = smooth(a, R.spec.smoothing_window);
          b = smooth(b, R.spec.smoothing_window);
        }
        R.table.push_back(
            {R.spec.values[vi], px, field, l2_time_distance(a, b)});
      }
    }
  }
}

/// Runs jobs 0..n-1 on up to thread_cap() workers. When `abort_on_failure`
/// is set, a failed job keeps later unstarted jobs from launching.
inline void run_pool(int n, bool abort_on_failure,
                     const std::function<std::string(int)>& job,
                     std::vector<std::string>& errors, bool& aborted) {
  errors.assign(n, "");
  std::atomic<int> next{0};
  std::atomic<bool> stop{false};
  const int workers = std::min(thread_cap(), n);
  auto work = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      if (stop.load() && abort_on_failure) {
        errors[i] = "skipped: ladder aborted by an earlier failure";
        continue;
      }
      const std::string err = job(i);
      if (!err.empty()) {
        errors[i] = err;
        if (abort_on_failure) stop.store(true);
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> ts;
    for (int w = 0; w < workers; ++w) ts.emplace_back(work);
    for (auto& t : ts) t.join();
  }
  aborted = stop.load();
}

}  // namespace detail

/// Curvature ladder: coupled runs for each l against the straight-beam pair
/// (shear/transversal contact problem plus the wave contact problem).
inline LadderResult run_l_ladder(const LadderSpec& spec, const BeamConfig& base,
                                 const InitialData& init = initial_sl1()) {
  spec.validate();
  base.validate();
  LadderResult R;
  R.spec = spec;
  R.grid = build_grid(base.L, base.L0, spec.h, spec.probes);
  const int n = (int)spec.values.size();
  R.rungs.resize(n);

  // limit reference first; without it distances are undefined
  try {
    const auto [dt, stride] = detail::aligned_dt(
        max_wave_speed(base), R.grid.h, spec.cfl_safety, spec.record_dt);
    IntegratorConfig icfg;
    icfg.t_end = spec.t_end;
    icfg.dt_override = dt;
    icfg.output_stride = stride;
    Trajectory tim = timoshenko_simulate(base, R.grid, icfg, init);
    Trajectory wav = wave_simulate(base, R.grid, icfg, init);
    detail::canonicalize_times(tim, spec.record_dt);
    detail::canonicalize_times(wav, spec.record_dt);
    R.limit_primary = std::move(tim);
    R.limit_wave = std::move(wav);
  } catch (const std::exception& e) {
    R.limit_error = e.what();
    R.aborted = true;
    return R;
  }

  detail::run_pool(
      n, /*abort_on_failure=*/true,
      [&](int i) -> std::string {
        try {
          BeamConfig cfg = base;
          cfg.l = spec.values[i];
          R.rungs[i] = detail::run_coupled_rung(cfg, R.grid, spec, init);
          return "";
        } catch (const std::exception& e) {
          return e.what();
        }
      },
      R.rung_errors, R.aborted);

  detail::assemble_table(R);
  return R;
}

/// Stiffness ladder: coupled runs for each chi (curvature shrunk, shear
/// stiffness grown) against the fourth-order limit plus the wave limit.
/// Failed rungs are reported and skipped; the largest completed rung is the
/// endpoint of the trend check.
inline LadderResult run_chi_ladder(const LadderSpec& spec,
                                   const BeamConfig& base,
                                   const InitialData& init = initial_sl2()) {
  spec.validate();
  base.validate();
  LadderResult R;
  R.spec = spec;
  R.grid = build_grid(base.L, base.L0, spec.h, spec.probes);
  const int n = (int)spec.values.size();
  R.rungs.resize(n);

  try {
    const auto [dte, stre] = detail::aligned_dt(
        eb_max_wave_speed(base), R.grid.h, spec.cfl_safety, spec.record_dt);
    IntegratorConfig icfg_eb;
    icfg_eb.t_end = spec.t_end;
    icfg_eb.dt_override = dte;
    icfg_eb.output_stride = stre;
    EBInitialData eb_init{init.disp_left[0], init.vel_left[0],
                          init.disp_right[0], init.vel_right[0]};
    Trajectory eb = eb_simulate(base, R.grid, icfg_eb, eb_init);
    detail::canonicalize_times(eb, spec.record_dt);

    const auto [dtw, strw] = detail::aligned_dt(
        max_wave_speed(base), R.grid.h, spec.cfl_safety, spec.record_dt);
    IntegratorConfig icfg_w;
    icfg_w.t_end = spec.t_end;
    icfg_w.dt_override = dtw;
    icfg_w.output_stride = strw;
    Trajectory wav = wave_limit_simulate(base, R.grid, icfg_w, init);
    detail::canonicalize_times(wav, spec.record_dt);

    R.limit_primary = std::move(eb);
    R.limit_wave = std::move(wav);
  } catch (const std::exception& e) {
    R.limit_error = e.what();
    R.aborted = true;
    return R;
  }

  detail::run_pool(
      n, /*abort_on_failure=*/false,
      [&](int i) -> std::string {
        try {
          const BeamConfig cfg = scale_params_chi(base, spec.values[i]);
          R.rungs[i] = detail::run_coupled_rung(cfg, R.grid, spec, init);
          return "";
        } catch (const blow_up_error& e) {
          return std::string("blow-up (oscillations at large stiffness): ") +
                 e.what();
        } catch (const std::exception& e) {
          return e.what();
        }
      },
      R.rung_errors, R.aborted);

  for (int i = 0; i < n; ++i)
    if (!R.rung_errors[i].empty())
      R.warnings.push_back("rung chi=" + std::to_string(spec.values[i]) +
                           " failed: " + R.rung_errors[i]);

  detail::assemble_table(R);
  return R;
}

}  // namespace bresse
