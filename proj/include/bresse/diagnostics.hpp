#pragma once

// Energy, Lyapunov and dissipation ledgers, probe series and the L2-in-time
// distance used by the convergence studies. All integrals use composite
// trapezoid quadrature, consistent with the second-order discretization.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "bresse/errors.hpp"
#include "bresse/grid.hpp"
#include "bresse/model.hpp"
#include "bresse/operators.hpp"
#include "bresse/state.hpp"

namespace bresse {

struct EnergyEntry {
  double t = 0.0;
  double kinetic = 0.0;         // (1/2)||R^{1/2} Phi_t||^2
  double elastic = 0.0;         // (1/2)||A^{1/2} Phi||^2 via resultants
  double potential = 0.0;       // integral of the feedback potential
  double dissipated_cum = 0.0;  // time integral of (gamma(psi_t), psi_t)
  double work_cum = 0.0;        // time integral of (P, Phi_t)
  double lyapunov = 0.0;
  double balance_residual = 0.0;
  double total() const { return kinetic + elastic + potential; }
};

namespace detail {

inline double trapz(const std::vector<double>& f, double h) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

/// Node derivatives of one segment array: central in the interior, 3-point
/// one-sided at the segment ends.
inline std::vector<double> node_derivative(const std::vector<double>& f,
                                           double h) {
  const int n = (int)f.size();
  std::vector<double> d(n);
  const double inv2h = 0.5 / h;
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  for (int i = 1; i < n - 1; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv2h;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
  return d;
}

}  // namespace detail

/// Kinetic + elastic + potential parts of the energy functional. The elastic
/// part expands the weighted operator norm through the resultants sampled on
/// the edges (midpoint quadrature), which is the exact invariant form of the
/// flux-form spatial operator; kinetic and potential use the node trapezoid.
inline EnergyEntry energy_parts(const BeamState& s, const BeamConfig& cfg,
                                const Grid& grid) {
  EnergyEntry e;
  e.t = s.t;
  const double h = grid.h, l = cfg.l;

  auto segment = [&](const Fields3& d, const Fields3& v,
                     const SegmentParams& P, const Scalar3Fn& F) {
    const int n = (int)d[0].size();
    std::vector<double> kin(n), pot(n);
    for (int i = 0; i < n; ++i) {
      kin[i] = P.rho * v[0][i] * v[0][i] + P.beta * v[1][i] * v[1][i] +
               P.rho * v[2][i] * v[2][i];
      pot[i] = F(d[0][i], d[1][i], d[2][i]);
    }
    double ela = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      const double Q = P.k * ((d[0][i + 1] - d[0][i]) / h +
                              0.5 * (d[1][i] + d[1][i + 1]) +
                              l * 0.5 * (d[2][i] + d[2][i + 1]));
      const double M = P.lambda * (d[1][i + 1] - d[1][i]) / h;
      const double N = P.sigma * ((d[2][i + 1] - d[2][i]) / h -
                                  l * 0.5 * (d[0][i] + d[0][i + 1]));
      ela += h * (Q * Q / P.k + N * N / P.sigma + M * M / P.lambda);
    }
    e.kinetic += 0.5 * detail::trapz(kin, h);
    e.elastic += 0.5 * ela;
    e.potential += detail::trapz(pot, h);
  };
  segment(s.dl, s.vl, cfg.left, cfg.nonlinearity.F1);
  segment(s.dr, s.vr, cfg.right, cfg.nonlinearity.F2);
  return e;
}

/// (P, Phi): spatial inner product of the loads with the displacements.
inline double load_displacement_product(const BeamState& s,
                                        const LoadTables& loads, double h) {
  double acc = 0.0;
  for (int f = 0; f < 3; ++f) {
    const int nl = (int)s.dl[f].size(), nr = (int)s.dr[f].size();
    std::vector<double> g(nl);
    for (int i = 0; i < nl; ++i) g[i] = loads.left[f][i] * s.dl[f][i];
    acc += detail::trapz(g, h);
    g.assign(nr, 0.0);
    for (int j = 0; j < nr; ++j) g[j] = loads.right[f][j] * s.dr[f][j];
    acc += detail::trapz(g, h);
  }
  return acc;
}

/// (P, Phi_t): instantaneous power of the loads.
inline double work_rate(const BeamState& s, const LoadTables& loads, double h) {
  double acc = 0.0;
  for (int f = 0; f < 3; ++f) {
    const int nl = (int)s.vl[f].size(), nr = (int)s.vr[f].size();
    std::vector<double> g(nl);
    for (int i = 0; i < nl; ++i) g[i] = loads.left[f][i] * s.vl[f][i];
    acc += detail::trapz(g, h);
    g.assign(nr, 0.0);
    for (int j = 0; j < nr; ++j) g[j] = loads.right[f][j] * s.vr[f][j];
    acc += detail::trapz(g, h);
  }
  return acc;
}

/// (gamma(psi_t), psi_t): instantaneous dissipation rate on the damped part.
inline double dissipation_rate(const BeamState& s, const BeamConfig& cfg,
                               double h) {
  const int nl = (int)s.vl[1].size();
  std::vector<double> g(nl);
  for (int i = 0; i < nl; ++i)
    g[i] = cfg.damping.gamma(s.vl[1][i]) * s.vl[1][i];
  return detail::trapz(g, h);
}

/// Full energy entry with ledgers supplied by the caller.
inline EnergyEntry energy(const BeamState& s, const BeamConfig& cfg,
                          const Grid& grid, const LoadTables& loads,
                          double dissipated_cum = 0.0, double work_cum = 0.0,
                          double initial_total = 0.0) {
  EnergyEntry e = energy_parts(s, cfg, grid);
  e.dissipated_cum = dissipated_cum;
  e.work_cum = work_cum;
  e.lyapunov = e.total() - load_displacement_product(s, loads, grid.h);
  e.balance_residual = e.total() + dissipated_cum - initial_total - work_cum;
  return e;
}

inline EnergyEntry energy(const BeamState& s, const BeamConfig& cfg,
                          const Grid& grid) {
  LoadTables loads(cfg, grid);
  EnergyEntry e = energy(s, cfg, grid, loads);
  e.balance_residual = 0.0;  // no ledger available for a single state
  return e;
}

/// Lyapunov functional: energy minus the work term. Requires autonomous
/// loads (otherwise the descent property is meaningless).
inline double lyapunov(const BeamState& s, const BeamConfig& cfg,
                       const Grid& grid) {
  if (cfg.loads.time_dependent)
    throw config_error("lyapunov requires time-independent loads");
  LoadTables loads(cfg, grid);
  const EnergyEntry e = energy_parts(s, cfg, grid);
  return e.total() - load_displacement_product(s, loads, grid.h);
}

// ---------------------------------------------------------------------------
// Trajectories and probe series

struct ProbeSeries {
  double x = 0.0;
  std::string field;
  std::vector<double> times;
  std::vector<double> values;
};

struct Trajectory {
  Grid grid;
  std::vector<double> times;
  struct Column {
    double x;
    std::string field;
    std::vector<double> values;
  };
  std::vector<Column> columns;
  std::vector<EnergyEntry> energy;
  std::vector<BeamState> snapshots;  // filled only when requested
  double dt = 0.0;
  long n_steps = 0;
  double max_interface_residual = 0.0;
  std::string scheme = "explicit-two-stage";
};

inline ProbeSeries probe(const Trajectory& traj, double x,
                         const std::string& field) {
  for (const auto& c : traj.columns)
    if (c.x == x && c.field == field)
      return ProbeSeries{c.x, c.field, traj.times, c.values};
  throw lookup_error("no probe series for field '" + field + "' at x=" +
                     std::to_string(x));
}

/// r(t) = E(t) + dissipated_cum(t) - E(0) - work_cum(t), recomputed from the
/// recorded ledger columns.
inline std::vector<double> energy_balance_residual(const Trajectory& traj) {
  std::vector<double> r(traj.energy.size());
  if (traj.energy.empty()) return r;
  const double e0 = traj.energy.front().total();
  for (size_t i = 0; i < traj.energy.size(); ++i) {
    const auto& e = traj.energy[i];
    r[i] = e.total() + e.dissipated_cum - e0 - e.work_cum;
  }
  return r;
}

/// Trapezoid-weighted L2 distance of two probe series over their common
/// (identical) time lattice.
inline double l2_time_distance(const ProbeSeries& a, const ProbeSeries& b) {
  if (a.times.size() != b.times.size())
    throw dimension_error("l2_time_distance: sample counts differ");
  for (size_t i = 0; i < a.times.size(); ++i)
    if (a.times[i] != b.times[i])
      throw dimension_error("l2_time_distance: time lattices differ");
  const size_t n = a.times.size();
  if (n < 2) return 0.0;
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double w = 0.0;
    if (i > 0) w += 0.5 * (a.times[i] - a.times[i - 1]);
    if (i + 1 < n) w += 0.5 * (a.times[i + 1] - a.times[i]);
    const double d = a.values[i] - b.values[i];
    acc += w * d * d;
  }
  return std::sqrt(acc);
}

}  // namespace bresse
