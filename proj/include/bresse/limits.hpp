#pragma once

// Solvers for the three limiting systems. The Timoshenko and wave
// transmission solvers are exact restrictions of the coupled kernel with
// zero curvature and the complementary field pair held at zero, so that the
// decoupling identity against the coupled simulator holds to the bit. The
// fourth-order limit solver advances rho*a - beta*a_xx = rhs implicitly in
// the mass operator only, with the dynamic interface condition as the
// bordering row of the two tridiagonal solves.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "bresse/diagnostics.hpp"
#include "bresse/integrate.hpp"

namespace bresse {

// ---------------------------------------------------------------------------
// Timoshenko / wave restrictions of the coupled system

/// Contact problem for the straight beam: curvature zero, longitudinal pair
/// pinned at zero (its feedbacks and loads removed so it stays zero exactly).
inline Trajectory timoshenko_simulate(const BeamConfig& cfg, const Grid& grid,
                                      const IntegratorConfig& icfg,
                                      const InitialData& initial) {
  BeamConfig c = cfg;
  c.l = 0.0;
  auto zero3 = [](double, double, double) { return 0.0; };
  auto zero1 = [](double) { return 0.0; };
  c.nonlinearity.g1 = zero3;
  c.nonlinearity.g2 = zero3;
  c.loads.q1 = zero1;
  c.loads.q2 = zero1;
  InitialData init = initial;
  init.disp_left[kLongitudinal] = zero1;
  init.vel_left[kLongitudinal] = zero1;
  init.disp_right[kLongitudinal] = zero1;
  init.vel_right[kLongitudinal] = zero1;
  return simulate(c, grid, icfg, init);
}

/// Independent contact problem for the wave pair: curvature zero, the
/// transversal/shear pairs pinned at zero.
inline Trajectory wave_simulate(const BeamConfig& cfg, const Grid& grid,
                                const IntegratorConfig& icfg,
                                const InitialData& initial) {
  BeamConfig c = cfg;
  c.l = 0.0;
  auto zero3 = [](double, double, double) { return 0.0; };
  auto zero1 = [](double) { return 0.0; };
  c.nonlinearity.f1 = c.nonlinearity.f2 = zero3;
  c.nonlinearity.h1 = c.nonlinearity.h2 = zero3;
  c.loads.p1 = c.loads.p2 = zero1;
  c.loads.r1 = c.loads.r2 = zero1;
  InitialData init = initial;
  for (int f : {(int)kTransversal, (int)kShear}) {
    init.disp_left[f] = zero1;
    init.vel_left[f] = zero1;
    init.disp_right[f] = zero1;
    init.vel_right[f] = zero1;
  }
  return simulate(c, grid, icfg, init);
}

/// Wave limit of the second study: same contract as wave_simulate with zero
/// initial displacement.
inline Trajectory wave_limit_simulate(const BeamConfig& cfg, const Grid& grid,
                                      const IntegratorConfig& icfg,
                                      const InitialData& initial) {
  InitialData init = initial;
  auto zero1 = [](double) { return 0.0; };
  init.disp_left[kLongitudinal] = zero1;
  init.disp_right[kLongitudinal] = zero1;
  return wave_simulate(cfg, grid, icfg, init);
}

// ---------------------------------------------------------------------------
// Fourth-order (Euler-Bernoulli-type) limit solver

struct EBInitialData {
  Scalar1Fn disp_left, vel_left;    // phi0, phi1
  Scalar1Fn disp_right, vel_right;  // u0, u1
};

inline EBInitialData eb_initial_sl2() {
  const InitialData d = initial_sl2();
  return {d.disp_left[0], d.vel_left[0], d.disp_right[0], d.vel_right[0]};
}

struct EBState {
  double t = 0.0;
  std::vector<double> dl, vl;  // nodes 0..I
  std::vector<double> dr, vr;  // nodes I..n, index 0 = interface
};

class EBSystem {
 public:
  EBSystem(const BeamConfig& cfg, const Grid& grid) : cfg_(cfg), grid_(grid) {
    const int I = grid.i_interface, n = grid.n;
    if (I < 4 || n - I < 4)
      throw dimension_error("fourth-order solver needs four nodes per side of the interface");
    const int nl = grid.left_size(), nr = grid.right_size();
    std::vector<double> r1(nl), r2(nr);
    loadl_.resize(nl);
    loadr_.resize(nr);
    for (int i = 0; i < nl; ++i) {
      loadl_[i] = cfg.loads.p1(grid.nodes[i]);
      r1[i] = cfg.loads.r1(grid.nodes[i]);
    }
    for (int j = 0; j < nr; ++j) {
      loadr_[j] = cfg.loads.p2(grid.nodes[I + j]);
      r2[j] = cfg.loads.r2(grid.nodes[I + j]);
    }
    const auto dr1 = detail::node_derivative(r1, grid.h);
    const auto dr2 = detail::node_derivative(r2, grid.h);
    for (int i = 0; i < nl; ++i) loadl_[i] += dr1[i];
    for (int j = 0; j < nr; ++j) loadr_[j] += dr2[j];
  }

  const BeamConfig& config() const { return cfg_; }
  const Grid& grid() const { return grid_; }

  /// Ghost value extending the left segment past the interface so that the
  /// five-point stencil sees slope- and curvature-matched data.
  double ghost_left(const EBState& s) const {
    const int I = grid_.i_interface;
    const double la1 = cfg_.left.lambda, la2 = cfg_.right.lambda;
    return (2.0 * la2 * s.dr[1] + (la2 - la1) * (s.dl[I - 1] - 2.0 * s.dl[I])) /
           (la1 + la2);
  }
  double ghost_right(const EBState& s) const {
    const int I = grid_.i_interface;
    const double la1 = cfg_.left.lambda, la2 = cfg_.right.lambda;
    return (2.0 * la1 * s.dl[I - 1] + (la1 - la2) * (s.dr[1] - 2.0 * s.dr[0])) /
           (la1 + la2);
  }

  /// Right-hand side of the mass system: everything except the inertia
  /// terms, with the damping argument taken from the supplied velocities.
  void compute_rhs(const EBState& s, const std::vector<double>& vgl,
                   const std::vector<double>& vgr, std::vector<double>& rl,
                   std::vector<double>& rr, double& interface_rhs) const {
    const int I = grid_.i_interface, nr = grid_.right_size();
    const double h = grid_.h;
    const double invh2 = 1.0 / (h * h), invh4 = invh2 * invh2,
                 inv2h = 0.5 / h, invh3 = 1.0 / (h * h * h);
    rl.assign(I + 1, 0.0);
    rr.assign(nr, 0.0);

    auto fd_partial2 = [](const Scalar3Fn& f, int arg, double a, double b) {
      const double step = 1e-6;
      double pa = a, pb = b, ma = a, mb = b;
      if (arg == 0) {
        pa += step;
        ma -= step;
      } else {
        pb += step;
        mb -= step;
      }
      return (f(pa, pb, 0.0) - f(ma, mb, 0.0)) / (2.0 * step);
    };

    // left segment
    {
      const auto& P = cfg_.left;
      const auto& nl = cfg_.nonlinearity;
      const double gl = ghost_left(s);
      for (int i = 1; i < I; ++i) {
        double d4;
        if (i == 1)
          d4 = (7.0 * s.dl[1] - 4.0 * s.dl[0] - 4.0 * s.dl[2] + s.dl[3]) * invh4;
        else if (i == I - 1)
          d4 = (s.dl[I - 3] - 4.0 * s.dl[I - 2] + 6.0 * s.dl[I - 1] -
                4.0 * s.dl[I] + gl) *
               invh4;
        else
          d4 = (s.dl[i - 2] - 4.0 * s.dl[i - 1] + 6.0 * s.dl[i] -
                4.0 * s.dl[i + 1] + s.dl[i + 2]) *
               invh4;
        const double chix = (s.dl[i + 1] - s.dl[i - 1]) * inv2h;
        const double chixx = (s.dl[i + 1] - 2.0 * s.dl[i] + s.dl[i - 1]) * invh2;
        const double vtx = (vgl[i + 1] - vgl[i - 1]) * inv2h;
        const double vtxx = (vgl[i + 1] - 2.0 * vgl[i] + vgl[i - 1]) * invh2;
        const double slope = -chix;
        double dh = 0.0;
        if (nl.h1_da && nl.h1_db)
          dh = nl.h1_da(s.dl[i], slope, 0.0) * chix -
               nl.h1_db(s.dl[i], slope, 0.0) * chixx;
        else
          dh = fd_partial2(nl.h1, 0, s.dl[i], slope) * chix -
               fd_partial2(nl.h1, 1, s.dl[i], slope) * chixx;
        rl[i] = -P.lambda * d4 + cfg_.damping.gamma_prime(-vtx) * vtxx - dh -
                nl.f1(s.dl[i], slope, 0.0) + loadl_[i];
      }
    }
    // right segment
    {
      const auto& P = cfg_.right;
      const auto& nl = cfg_.nonlinearity;
      const double gr = ghost_right(s);
      for (int j = 1; j < nr - 1; ++j) {
        double d4;
        if (j == 1)
          d4 = (gr - 4.0 * s.dr[0] + 6.0 * s.dr[1] - 4.0 * s.dr[2] + s.dr[3]) *
               invh4;
        else if (j == nr - 2)
          d4 = (s.dr[nr - 4] - 4.0 * s.dr[nr - 3] + 7.0 * s.dr[nr - 2] -
                4.0 * s.dr[nr - 1]) *
               invh4;
        else
          d4 = (s.dr[j - 2] - 4.0 * s.dr[j - 1] + 6.0 * s.dr[j] -
                4.0 * s.dr[j + 1] + s.dr[j + 2]) *
               invh4;
        const double chix = (s.dr[j + 1] - s.dr[j - 1]) * inv2h;
        const double chixx = (s.dr[j + 1] - 2.0 * s.dr[j] + s.dr[j - 1]) * invh2;
        const double slope = -chix;
        double dh = 0.0;
        if (nl.h2_da && nl.h2_db)
          dh = nl.h2_da(s.dr[j], slope, 0.0) * chix -
               nl.h2_db(s.dr[j], slope, 0.0) * chixx;
        else
          dh = fd_partial2(nl.h2, 0, s.dr[j], slope) * chix -
               fd_partial2(nl.h2, 1, s.dr[j], slope) * chixx;
        rr[j] = -P.lambda * d4 - dh - nl.f2(s.dr[j], slope, 0.0) + loadr_[j];
      }
    }

    // dynamic interface condition: the rotational-inertia jump of the
    // acceleration slope balances the third-derivative flux, the shear
    // feedbacks and the boundary damping trace
    const int I_ = I;
    const double d3l = (2.5 * s.dl[I_] - 9.0 * s.dl[I_ - 1] + 12.0 * s.dl[I_ - 2] -
                        7.0 * s.dl[I_ - 3] + 1.5 * s.dl[I_ - 4]) *
                       invh3;
    const double d3r = (-2.5 * s.dr[0] + 9.0 * s.dr[1] - 12.0 * s.dr[2] +
                        7.0 * s.dr[3] - 1.5 * s.dr[4]) *
                       invh3;
    const double sL = (3.0 * s.dl[I_] - 4.0 * s.dl[I_ - 1] + s.dl[I_ - 2]) * inv2h;
    const double slope_if = -sL;
    const double vXl = (3.0 * vgl[I_] - 4.0 * vgl[I_ - 1] + vgl[I_ - 2]) * inv2h;
    interface_rhs = cfg_.left.lambda * d3l - cfg_.right.lambda * d3r +
                    cfg_.nonlinearity.h1(s.dl[I_], slope_if, 0.0) -
                    cfg_.nonlinearity.h2(s.dl[I_], slope_if, 0.0) +
                    cfg_.damping.gamma(-vXl);
  }

  /// Solves (rho - beta d_xx) a = rhs per segment with a(0)=a(L)=0 and the
  /// dynamic interface row bordering the two tridiagonal blocks.
  void mass_solve(const std::vector<double>& rl, const std::vector<double>& rr,
                  double interface_rhs, std::vector<double>& al,
                  std::vector<double>& ar) const {
    const int I = grid_.i_interface, nr = grid_.right_size();
    const double h = grid_.h, invh2 = 1.0 / (h * h), inv2h = 0.5 / h;
    const double b1 = cfg_.left.beta, b2 = cfg_.right.beta;
    const double dl_diag = cfg_.left.rho + 2.0 * b1 * invh2;
    const double dl_off = -b1 * invh2;
    const double dr_diag = cfg_.right.rho + 2.0 * b2 * invh2;
    const double dr_off = -b2 * invh2;

    // xL,yL over interior rows 1..I-1; a_left = xL + aI*yL
    auto thomas = [](int m, double diag, double off,
                     const std::vector<double>& rhs, std::vector<double>& x) {
      // constant-coefficient tridiagonal, strictly diagonally dominant
      std::vector<double> c(m), d(m);
      c[0] = off / diag;
      d[0] = rhs[0] / diag;
      for (int i = 1; i < m; ++i) {
        const double w = diag - off * c[i - 1];
        c[i] = off / w;
        d[i] = (rhs[i] - off * d[i - 1]) / w;
      }
      x.resize(m);
      x[m - 1] = d[m - 1];
      for (int i = m - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    };

    const int ml = I - 1, mr = nr - 2;
    std::vector<double> rhsL(ml), rhsR(mr), xL, yL, xR, yR, unitL(ml, 0.0),
        unitR(mr, 0.0);
    for (int i = 0; i < ml; ++i) rhsL[i] = rl[i + 1];
    for (int j = 0; j < mr; ++j) rhsR[j] = rr[j + 1];
    unitL[ml - 1] = -dl_off;  // coupling of row I-1 to a_I
    unitR[0] = -dr_off;       // coupling of row I+1 to a_I
    thomas(ml, dl_diag, dl_off, rhsL, xL);
    thomas(ml, dl_diag, dl_off, unitL, yL);
    thomas(mr, dr_diag, dr_off, rhsR, xR);
    thomas(mr, dr_diag, dr_off, unitR, yR);

    // interface row: [b1(3aI -4a_{I-1} +a_{I-2}) + b2(3aI -4a_{I+1} +a_{I+2})]/(2h) = rhs
    const double coef =
        (3.0 * (b1 + b2) +
         b1 * (-4.0 * yL[ml - 1] + (ml >= 2 ? yL[ml - 2] : 0.0)) +
         b2 * (-4.0 * yR[0] + (mr >= 2 ? yR[1] : 0.0))) *
        inv2h;
    const double cnst =
        (b1 * (-4.0 * xL[ml - 1] + (ml >= 2 ? xL[ml - 2] : 0.0)) +
         b2 * (-4.0 * xR[0] + (mr >= 2 ? xR[1] : 0.0))) *
        inv2h;
    if (coef == 0.0)
      throw config_error("fourth-order limit: singular interface mass row");
    const double aI = (interface_rhs - cnst) / coef;

    al.assign(I + 1, 0.0);
    ar.assign(nr, 0.0);
    for (int i = 0; i < ml; ++i) al[i + 1] = xL[i] + aI * yL[i];
    for (int j = 0; j < mr; ++j) ar[j + 1] = xR[j] + aI * yR[j];
    al[I] = aI;
    ar[0] = aI;
  }

  /// Residuals of the interface coupling on the current displacements:
  /// slope mismatch and scaled-curvature mismatch at the junction.
  std::array<double, 2> interface_residuals(const EBState& s) const {
    const int I = grid_.i_interface;
    const double inv2h = 0.5 / grid_.h, invh2 = 1.0 / (grid_.h * grid_.h);
    const double sL = (3.0 * s.dl[I] - 4.0 * s.dl[I - 1] + s.dl[I - 2]) * inv2h;
    const double sR = (-3.0 * s.dr[0] + 4.0 * s.dr[1] - s.dr[2]) * inv2h;
    const double cL = (2.0 * s.dl[I] - 5.0 * s.dl[I - 1] + 4.0 * s.dl[I - 2] -
                       s.dl[I - 3]) *
                      invh2;
    const double cR = (2.0 * s.dr[0] - 5.0 * s.dr[1] + 4.0 * s.dr[2] -
                       s.dr[3]) *
                      invh2;
    return {sL - sR, cfg_.left.lambda * cL - cfg_.right.lambda * cR};
  }

  /// Projects the nodes adjacent to the junction onto the slope/curvature
  /// matching conditions (2x2 linear correction).
  void enforce_interface(std::vector<double>& left, std::vector<double>& right) const {
    const int I = grid_.i_interface;
    const double inv2h = 0.5 / grid_.h, invh2 = 1.0 / (grid_.h * grid_.h);
    const double la1 = cfg_.left.lambda, la2 = cfg_.right.lambda;
    const double sL = (3.0 * left[I] - 4.0 * left[I - 1] + left[I - 2]) * inv2h;
    const double sR = (-3.0 * right[0] + 4.0 * right[1] - right[2]) * inv2h;
    const double cL =
        (2.0 * left[I] - 5.0 * left[I - 1] + 4.0 * left[I - 2] - left[I - 3]) * invh2;
    const double cR =
        (2.0 * right[0] - 5.0 * right[1] + 4.0 * right[2] - right[3]) * invh2;
    const double S = sL - sR, C = la1 * cL - la2 * cR;
    // unknowns: corrections to left[I-1] and right[1]
    const double a11 = -2.0 / grid_.h, a12 = -2.0 / grid_.h;
    const double a21 = -5.0 * la1 * invh2, a22 = 5.0 * la2 * invh2;
    const double det = a11 * a22 - a12 * a21;
    const double dx1 = (-S * a22 + C * a12) / det;
    const double dx2 = (-C * a11 + S * a21) / det;
    left[I - 1] += dx1;
    right[1] += dx2;
  }

  const std::vector<double>& load_left() const { return loadl_; }
  const std::vector<double>& load_right() const { return loadr_; }

 private:
  BeamConfig cfg_;
  Grid grid_;
  std::vector<double> loadl_, loadr_;  // p + dr/dx per node
};

namespace detail {

inline void eb_record(Trajectory& traj, const EBState& s, const EBSystem& sys,
                      double diss_cum, double work_cum, double e0) {
  const Grid& g = sys.grid();
  const BeamConfig& cfg = sys.config();
  traj.times.push_back(s.t);
  const double inv2h = 0.5 / g.h;
  size_t col = 0;
  for (const auto& [px, node] : g.probe_indices) {
    (void)px;
    const bool left = node <= g.i_interface;
    const int idx = left ? node : node - g.i_interface;
    const auto& d = left ? s.dl : s.dr;
    const int last = (int)d.size() - 1;
    double slope;
    if (idx == 0)
      slope = (-3.0 * d[0] + 4.0 * d[1] - d[2]) * inv2h;
    else if (idx == last)
      slope = (3.0 * d[last] - 4.0 * d[last - 1] + d[last - 2]) * inv2h;
    else
      slope = (d[idx + 1] - d[idx - 1]) * inv2h;
    traj.columns[col++].values.push_back(d[idx]);
    traj.columns[col++].values.push_back(-slope);  // derived shear angle
  }

  // energy ledger of the limit system
  EnergyEntry e;
  e.t = s.t;
  const double h = g.h;
  auto seg_energy = [&](const std::vector<double>& d,
                        const std::vector<double>& v, const SegmentParams& P,
                        const Scalar3Fn& F) {
    const auto dx = node_derivative(d, h);
    const auto vx = node_derivative(v, h);
    const int n = (int)d.size();
    std::vector<double> kin(n), ela(n), pot(n);
    const auto dxx_of = [&](int i) {
      if (i == 0) return (2.0 * d[0] - 5.0 * d[1] + 4.0 * d[2] - d[3]) / (h * h);
      if (i == n - 1)
        return (2.0 * d[n - 1] - 5.0 * d[n - 2] + 4.0 * d[n - 3] - d[n - 4]) /
               (h * h);
      return (d[i + 1] - 2.0 * d[i] + d[i - 1]) / (h * h);
    };
    for (int i = 0; i < n; ++i) {
      kin[i] = P.rho * v[i] * v[i] + P.beta * vx[i] * vx[i];
      const double cxx = dxx_of(i);
      ela[i] = P.lambda * cxx * cxx;
      pot[i] = F(d[i], -dx[i], 0.0);
    }
    return std::array<double, 3>{0.5 * trapz(kin, h), 0.5 * trapz(ela, h),
                                 trapz(pot, h)};
  };
  const auto el = seg_energy(s.dl, s.vl, cfg.left, cfg.nonlinearity.F1);
  const auto er = seg_energy(s.dr, s.vr, cfg.right, cfg.nonlinearity.F2);
  e.kinetic = el[0] + er[0];
  e.elastic = el[1] + er[1];
  e.potential = el[2] + er[2];
  e.dissipated_cum = diss_cum;
  e.work_cum = work_cum;
  // work term (P, Phi) of the limit system: p*chi + r*(-chi_x)
  double pw = 0.0;
  {
    const auto dxl = node_derivative(s.dl, h);
    const auto dxr = node_derivative(s.dr, h);
    const int nl = (int)s.dl.size(), nr = (int)s.dr.size();
    std::vector<double> gl(nl), gr(nr);
    for (int i = 0; i < nl; ++i)
      gl[i] = cfg.loads.p1(g.nodes[i]) * s.dl[i] +
              cfg.loads.r1(g.nodes[i]) * (-dxl[i]);
    for (int j = 0; j < nr; ++j)
      gr[j] = cfg.loads.p2(g.nodes[g.i_interface + j]) * s.dr[j] +
              cfg.loads.r2(g.nodes[g.i_interface + j]) * (-dxr[j]);
    pw = trapz(gl, h) + trapz(gr, h);
  }
  e.lyapunov = e.total() - pw;
  e.balance_residual = e.total() + diss_cum - e0 - work_cum;
  traj.energy.push_back(e);
}

inline double eb_dissipation_rate(const EBState& s, const BeamConfig& cfg,
                                  double h) {
  // integral of gamma(-chi_tx) * (-chi_tx) over the damped segment
  const auto vx = node_derivative(s.vl, h);
  std::vector<double> g(vx.size());
  for (size_t i = 0; i < vx.size(); ++i)
    g[i] = cfg.damping.gamma(-vx[i]) * (-vx[i]);
  return trapz(g, h);
}

inline double eb_work_rate(const EBState& s, const BeamConfig& cfg,
                           const Grid& grid) {
  const double h = grid.h;
  const auto vxl = node_derivative(s.vl, h);
  const auto vxr = node_derivative(s.vr, h);
  const int nl = (int)s.vl.size(), nr = (int)s.vr.size();
  std::vector<double> gl(nl), gr(nr);
  for (int i = 0; i < nl; ++i)
    gl[i] = cfg.loads.p1(grid.nodes[i]) * s.vl[i] +
            cfg.loads.r1(grid.nodes[i]) * (-vxl[i]);
  for (int j = 0; j < nr; ++j)
    gr[j] = cfg.loads.p2(grid.nodes[grid.i_interface + j]) * s.vr[j] +
            cfg.loads.r2(grid.nodes[grid.i_interface + j]) * (-vxr[j]);
  return trapz(gl, h) + trapz(gr, h);
}

}  // namespace detail

/// Largest characteristic speed of the fourth-order limit system (bending
/// branch with rotational inertia saturates at sqrt(lambda/beta)).
inline double eb_max_wave_speed(const BeamConfig& cfg) {
  return std::max(std::sqrt(cfg.left.lambda / cfg.left.beta),
                  std::sqrt(cfg.right.lambda / cfg.right.beta));
}

/// Advances the fourth-order limit system. Initial data must satisfy the
/// clamped and continuity conditions of the limit theorem.
inline Trajectory eb_simulate(const BeamConfig& cfg, const Grid& grid,
                              const IntegratorConfig& icfg,
                              const EBInitialData& init) {
  cfg.validate();
  icfg.validate();
  EBSystem sys(cfg, grid);
  const int I = grid.i_interface, nr = grid.right_size();
  const double h = grid.h;

  // initial-data hypotheses of the limit theorem
  {
    const double fd = 1e-5;
    auto d0 = [&](const Scalar1Fn& f, double x) {
      return (f(x + fd) - f(x - fd)) / (2.0 * fd);
    };
    auto d_fwd = [&](const Scalar1Fn& f, double x) {
      return (-3.0 * f(x) + 4.0 * f(x + fd) - f(x + 2.0 * fd)) / (2.0 * fd);
    };
    auto d_bwd = [&](const Scalar1Fn& f, double x) {
      return (3.0 * f(x) - 4.0 * f(x - fd) + f(x - 2.0 * fd)) / (2.0 * fd);
    };
    const double L = grid.L(), L0 = grid.L0();
    if (std::abs(init.disp_left(0.0)) > 1e-9 ||
        std::abs(init.disp_right(L)) > 1e-9 ||
        std::abs(d_fwd(init.disp_left, 0.0)) > 1e-6 ||
        std::abs(d_bwd(init.disp_right, L)) > 1e-6)
      throw config_error("limit initial data violates the clamped end conditions");
    if (std::abs(init.disp_left(L0) - init.disp_right(L0)) > 1e-9 ||
        std::abs(d0(init.disp_left, L0) - d0(init.disp_right, L0)) > 1e-6)
      throw config_error("limit initial data violates interface continuity");
    if (std::abs(init.vel_left(0.0)) > 1e-9 ||
        std::abs(init.vel_right(L)) > 1e-9 ||
        std::abs(init.vel_left(L0) - init.vel_right(L0)) > 1e-9)
      throw config_error("limit initial velocity violates side conditions");
  }

  EBState s;
  s.dl.resize(I + 1);
  s.vl.resize(I + 1);
  s.dr.resize(nr);
  s.vr.resize(nr);
  for (int i = 0; i <= I; ++i) {
    s.dl[i] = init.disp_left(grid.nodes[i]);
    s.vl[i] = init.vel_left(grid.nodes[i]);
  }
  for (int j = 0; j < nr; ++j) {
    s.dr[j] = init.disp_right(grid.nodes[I + j]);
    s.vr[j] = init.vel_right(grid.nodes[I + j]);
  }
  s.dl[0] = s.vl[0] = 0.0;
  s.dr[nr - 1] = s.vr[nr - 1] = 0.0;
  s.dr[0] = s.dl[I];
  s.vr[0] = s.vl[I];

  double dt;
  long n_steps;
  if (icfg.dt_override > 0.0) {
    dt = icfg.dt_override;
    n_steps = std::llround(icfg.t_end / dt);
  } else if (icfg.t_end == 0.0) {
    dt = icfg.cfl_safety * h / eb_max_wave_speed(cfg);
    n_steps = 0;
  } else {
    const double dt0 = icfg.cfl_safety * h / eb_max_wave_speed(cfg);
    n_steps = (long)std::ceil(icfg.t_end / dt0 - 1e-12);
    dt = icfg.t_end / (double)n_steps;
  }

  Trajectory traj;
  traj.grid = grid;
  traj.dt = dt;
  traj.n_steps = n_steps;
  traj.scheme = "explicit-two-stage-mass-implicit";
  for (const auto& [px, node] : grid.probe_indices) {
    const int side = node <= I ? 0 : 1;
    traj.columns.push_back({px, field_name(side, kTransversal), {}});
    traj.columns.push_back({px, field_name(side, kShear), {}});
  }

  double diss_cum = 0.0, work_cum = 0.0;
  double e0;
  {
    Trajectory tmp;
    tmp.grid = grid;
    tmp.columns = traj.columns;
    detail::eb_record(tmp, s, sys, 0.0, 0.0, 0.0);
    e0 = tmp.energy.front().total();
  }
  double diss_prev = detail::eb_dissipation_rate(s, cfg, h);
  double work_prev = detail::eb_work_rate(s, cfg, grid);
  detail::eb_record(traj, s, sys, 0.0, 0.0, e0);

  std::vector<double> rl, rr, al, ar, vtl, vtr, vhl, vhr;
  double jrhs;
  for (long k = 1; k <= n_steps; ++k) {
    const double t_prev = s.t;
    // stage 1
    sys.compute_rhs(s, s.vl, s.vr, rl, rr, jrhs);
    sys.mass_solve(rl, rr, jrhs, al, ar);
    vtl = s.vl;
    vtr = s.vr;
    vhl = s.vl;
    vhr = s.vr;
    for (int i = 0; i <= I; ++i) {
      vtl[i] += dt * al[i];
      vhl[i] += 0.5 * dt * al[i];
      s.dl[i] += dt * vhl[i];
    }
    for (int j = 0; j < nr; ++j) {
      vtr[j] += dt * ar[j];
      vhr[j] += 0.5 * dt * ar[j];
      s.dr[j] += dt * vhr[j];
    }
    s.dl[0] = 0.0;
    s.dr[nr - 1] = 0.0;
    sys.enforce_interface(s.dl, s.dr);
    // stage 2
    sys.compute_rhs(s, vtl, vtr, rl, rr, jrhs);
    sys.mass_solve(rl, rr, jrhs, al, ar);
    for (int i = 0; i <= I; ++i) s.vl[i] = vhl[i] + 0.5 * dt * al[i];
    for (int j = 0; j < nr; ++j) s.vr[j] = vhr[j] + 0.5 * dt * ar[j];
    s.vl[0] = 0.0;
    s.vr[nr - 1] = 0.0;
    sys.enforce_interface(s.vl, s.vr);
    s.t = (double)k * dt;

    for (const auto* arr : {&s.dl, &s.vl, &s.dr, &s.vr})
      for (double v : *arr)
        if (!std::isfinite(v) || std::abs(v) > kBlowUpLimit)
          throw blow_up_error("fourth-order limit run blew up after t=" +
                                  std::to_string(t_prev),
                              t_prev);

    const double dr_now = detail::eb_dissipation_rate(s, cfg, h);
    const double wr_now = detail::eb_work_rate(s, cfg, grid);
    diss_cum += 0.5 * dt * (diss_prev + dr_now);
    work_cum += 0.5 * dt * (work_prev + wr_now);
    diss_prev = dr_now;
    work_prev = wr_now;

    const auto ir = sys.interface_residuals(s);
    traj.max_interface_residual = std::max(
        traj.max_interface_residual, std::max(std::abs(ir[0]), std::abs(ir[1])));

    if (k % icfg.output_stride == 0 || k == n_steps)
      detail::eb_record(traj, s, sys, diss_cum, work_cum, e0);
  }
  return traj;
}

}  // namespace bresse
