#pragma once

// Second-order collocated semidiscretization of the six-field system and the
// per-step interface solve that pins the transmission conditions (continuity
// plus shear/bending/axial flux matching) at the material junction.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "bresse/errors.hpp"
#include "bresse/grid.hpp"
#include "bresse/model.hpp"
#include "bresse/state.hpp"

namespace bresse {

using Fields3 = std::array<std::vector<double>, 3>;

struct Accel {
  Fields3 al, ar;
  void resize(int nl, int nr) {
    for (int f = 0; f < 3; ++f) {
      al[f].assign(nl, 0.0);
      ar[f].assign(nr, 0.0);
    }
  }
};

/// Load values sampled once per run on the grid, per segment.
struct LoadTables {
  Fields3 left, right;  // (p, r, q) on nodes 0..I and I..n
  LoadTables() = default;
  LoadTables(const BeamConfig& cfg, const Grid& grid) {
    const int nl = grid.left_size(), nr = grid.right_size();
    for (int f = 0; f < 3; ++f) {
      left[f].resize(nl);
      right[f].resize(nr);
    }
    for (int i = 0; i < nl; ++i) {
      const double x = grid.nodes[i];
      left[0][i] = cfg.loads.p1(x);
      left[1][i] = cfg.loads.r1(x);
      left[2][i] = cfg.loads.q1(x);
    }
    for (int j = 0; j < nr; ++j) {
      const double x = grid.nodes[grid.i_interface + j];
      right[0][j] = cfg.loads.p2(x);
      right[1][j] = cfg.loads.r2(x);
      right[2][j] = cfg.loads.q2(x);
    }
  }
};

struct InterfaceReport {
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
};

namespace detail {

inline void solve3(double A[3][3], double b[3], double x[3]) {
  int piv[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int p = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(A[piv[r]][col]) > std::abs(A[piv[p]][col])) p = r;
    std::swap(piv[col], piv[p]);
    const double d = A[piv[col]][col];
    for (int r = col + 1; r < 3; ++r) {
      const double m = A[piv[r]][col] / d;
      for (int c = col; c < 3; ++c) A[piv[r]][c] -= m * A[piv[col]][c];
      b[piv[r]] -= m * b[piv[col]];
    }
  }
  for (int row = 2; row >= 0; --row) {
    double s = b[piv[row]];
    for (int c = row + 1; c < 3; ++c) s -= A[piv[row]][c] * x[c];
    x[row] = s / A[piv[row]][row];
  }
}

}  // namespace detail

/// Semidiscrete right-hand side of the second-order system. Interior nodes of
/// each segment get central second-order stencils; boundary and interface
/// entries are left at zero (they are governed by the side conditions).
/// One-sided first-derivative stencils at the junction: value at the
/// interface node plus `points-1` nodes into the segment.
struct OneSidedStencil {
  int points;
  double denom;
  double c[6];
};

inline OneSidedStencil one_sided_stencil(int points) {
  switch (points) {
    case 3:
      return {3, 2.0, {3.0, -4.0, 1.0}};
    case 5:
      return {5, 12.0, {25.0, -48.0, 36.0, -16.0, 3.0}};
    case 6:
      return {6, 60.0, {137.0, -300.0, 300.0, -200.0, 75.0, -12.0}};
    default:
      throw parameter_error("one_sided_stencil: supported widths are 3, 5, 6");
  }
}

class CoupledSystem {
 public:
  CoupledSystem(const BeamConfig& cfg, const Grid& grid,
                int interface_stencil_points = 6)
      : cfg_(cfg),
        grid_(grid),
        loads_(cfg, grid),
        st_(one_sided_stencil(interface_stencil_points)) {
    if (grid_.i_interface < st_.points - 1 ||
        grid_.n - grid_.i_interface < st_.points - 1)
      throw dimension_error(
          "grid too coarse for the interface stencil: need " +
          std::to_string(st_.points - 1) + " nodes on each side of the junction");
  }

  const BeamConfig& config() const { return cfg_; }
  const Grid& grid() const { return grid_; }
  const LoadTables& loads() const { return loads_; }

  /// Accelerations at interior nodes plus the flux-balance row at the
  /// interface node; `psi_t` supplies the velocity the damping term is
  /// evaluated at (the shear-rate on the damped segment).
  void accel(const Fields3& dl, const Fields3& dr,
             const std::vector<double>& psi_t, Accel& out) const {
    const int I = grid_.i_interface;
    const int nr = grid_.right_size();
    const double h = grid_.h, inv2h = 0.5 / h, invh2 = 1.0 / (h * h);
    const double l = cfg_.l;
    out.resize(I + 1, nr);

    // Flux form: edge resultants at the half nodes. The x-derivative terms
    // expand to the plain central second-order stencils; the zeroth-order
    // companions carry second-order edge averages, which makes each segment
    // operator the exact gradient of the edge-quadrature elastic energy
    // (exact discrete energy balance up to the time-integration wiggle).
    (void)inv2h;
    (void)invh2;
    auto edgeQ = [&](const SegmentParams& P, const Fields3& d, int e) {
      // flux on the edge between nodes e and e+1
      return P.k * ((d[0][e + 1] - d[0][e]) / h + 0.5 * (d[1][e] + d[1][e + 1]) +
                    l * 0.5 * (d[2][e] + d[2][e + 1]));
    };
    auto edgeM = [&](const SegmentParams& P, const Fields3& d, int e) {
      return P.lambda * (d[1][e + 1] - d[1][e]) / h;
    };
    auto edgeN = [&](const SegmentParams& P, const Fields3& d, int e) {
      return P.sigma * ((d[2][e + 1] - d[2][e]) / h -
                        l * 0.5 * (d[0][e] + d[0][e + 1]));
    };
    {
      const auto& P = cfg_.left;
      const auto& nl = cfg_.nonlinearity;
      double Qm = edgeQ(P, dl, 0), Mm = edgeM(P, dl, 0), Nm = edgeN(P, dl, 0);
      for (int i = 1; i < I; ++i) {
        const double Qp = edgeQ(P, dl, i);
        const double Mp = edgeM(P, dl, i);
        const double Np = edgeN(P, dl, i);
        out.al[0][i] = ((Qp - Qm) / h + l * 0.5 * (Nm + Np) -
                        nl.f1(dl[0][i], dl[1][i], dl[2][i]) + loads_.left[0][i]) /
                       P.rho;
        out.al[1][i] = ((Mp - Mm) / h - 0.5 * (Qm + Qp) -
                        cfg_.damping.gamma(psi_t[i]) -
                        nl.h1(dl[0][i], dl[1][i], dl[2][i]) + loads_.left[1][i]) /
                       P.beta;
        out.al[2][i] = ((Np - Nm) / h - l * 0.5 * (Qm + Qp) -
                        nl.g1(dl[0][i], dl[1][i], dl[2][i]) + loads_.left[2][i]) /
                       P.rho;
        Qm = Qp;
        Mm = Mp;
        Nm = Np;
      }
    }
    {
      const auto& P = cfg_.right;
      const auto& nl = cfg_.nonlinearity;
      double Qm = edgeQ(P, dr, 0), Mm = edgeM(P, dr, 0), Nm = edgeN(P, dr, 0);
      for (int j = 1; j < nr - 1; ++j) {
        const double Qp = edgeQ(P, dr, j);
        const double Mp = edgeM(P, dr, j);
        const double Np = edgeN(P, dr, j);
        out.ar[0][j] = ((Qp - Qm) / h + l * 0.5 * (Nm + Np) -
                        nl.f2(dr[0][j], dr[1][j], dr[2][j]) + loads_.right[0][j]) /
                       P.rho;
        out.ar[1][j] = ((Mp - Mm) / h - 0.5 * (Qm + Qp) -
                        nl.h2(dr[0][j], dr[1][j], dr[2][j]) + loads_.right[1][j]) /
                       P.beta;
        out.ar[2][j] = ((Np - Nm) / h - l * 0.5 * (Qm + Qp) -
                        nl.g2(dr[0][j], dr[1][j], dr[2][j]) + loads_.right[2][j]) /
                       P.rho;
        Qm = Qp;
        Mm = Mp;
        Nm = Np;
      }
    }
    {
      // Interface node: balance of the staggered half-cell fluxes from both
      // materials over the two adjacent half cells. Together with the
      // collocated interior stencils this row is symmetric in the
      // mass-weighted inner product, so the junction exchanges energy
      // without creating or destroying it.
      const auto& PL = cfg_.left;
      const auto& PR = cfg_.right;
      const auto& nl = cfg_.nonlinearity;
      const double a = dl[0][I], b = dl[1][I], c = dl[2][I];
      const double Q1h = edgeQ(PL, dl, I - 1), Q2h = edgeQ(PR, dr, 0);
      const double M1h = edgeM(PL, dl, I - 1), M2h = edgeM(PR, dr, 0);
      const double N1h = edgeN(PL, dl, I - 1), N2h = edgeN(PR, dr, 0);
      const double hh = 0.5 * h;
      const double f1v = nl.f1(a, b, c), f2v = nl.f2(a, b, c);
      const double h1v = nl.h1(a, b, c), h2v = nl.h2(a, b, c);
      const double g1v = nl.g1(a, b, c), g2v = nl.g2(a, b, c);
      const double p1v = loads_.left[0][I], p2v = loads_.right[0][0];
      const double r1v = loads_.left[1][I], r2v = loads_.right[1][0];
      const double q1v = loads_.left[2][I], q2v = loads_.right[2][0];
      const double aT = (Q2h - Q1h + hh * (l * (N1h + N2h) - f1v - f2v + p1v + p2v)) /
                        (hh * (PL.rho + PR.rho));
      const double aS = (M2h - M1h + hh * (-(Q1h + Q2h) -
                                           cfg_.damping.gamma(psi_t[I]) -
                                           h1v - h2v + r1v + r2v)) /
                        (hh * (PL.beta + PR.beta));
      const double aL = (N2h - N1h + hh * (-l * (Q1h + Q2h) - g1v - g2v + q1v + q2v)) /
                        (hh * (PL.rho + PR.rho));
      out.al[0][I] = out.ar[0][0] = aT;
      out.al[1][I] = out.ar[1][0] = aS;
      out.al[2][I] = out.ar[2][0] = aL;
    }
  }

  /// One-sided derivative at the junction from the left (f indexed over the
  /// left segment) or from the right.
  double d_left(const Fields3& f, int field) const {
    const int I = grid_.i_interface;
    double acc = 0.0;
    for (int k = 0; k < st_.points; ++k) acc += st_.c[k] * f[field][I - k];
    return acc / (st_.denom * grid_.h);
  }
  double d_right(const Fields3& f, int field) const {
    double acc = 0.0;
    for (int k = 0; k < st_.points; ++k) acc += st_.c[k] * f[field][k];
    return -acc / (st_.denom * grid_.h);
  }

  /// Flux-condition residuals (shear, bending, axial) for the trio values
  /// currently stored at the interface node of the given arrays.
  std::array<double, 3> flux_residual(const Fields3& fl, const Fields3& fr,
                                      double* scale_out = nullptr) const {
    const int I = grid_.i_interface;
    const double l = cfg_.l;
    const double a = fl[0][I], b = fl[1][I], c = fl[2][I];
    const double Q1 = cfg_.left.k * (d_left(fl, 0) + b + l * c);
    const double Q2 = cfg_.right.k * (d_right(fr, 0) + b + l * c);
    const double M1 = cfg_.left.lambda * d_left(fl, 1);
    const double M2 = cfg_.right.lambda * d_right(fr, 1);
    const double N1 = cfg_.left.sigma * (d_left(fl, 2) - l * a);
    const double N2 = cfg_.right.sigma * (d_right(fr, 2) - l * a);
    if (scale_out) {
      *scale_out = std::max({1.0, std::abs(Q1), std::abs(Q2), std::abs(M1),
                             std::abs(M2), std::abs(N1), std::abs(N2)});
    }
    return {Q1 - Q2, M1 - M2, N1 - N2};
  }

  /// Damped Newton solve for the trio values at the interface node of the
  /// given arrays; writes the solution into both segment copies.
  InterfaceReport solve_trio(Fields3& fl, Fields3& fr) const {
    const int I = grid_.i_interface;
    const double l = cfg_.l;
    const double k1 = cfg_.left.k, k2 = cfg_.right.k;
    const double s1 = cfg_.left.sigma, s2 = cfg_.right.sigma;
    const double la1 = cfg_.left.lambda, la2 = cfg_.right.lambda;

    InterfaceReport rep;
    double x[3] = {fl[0][I], fl[1][I], fl[2][I]};
    double scale = 1.0;
    auto resid = [&](const double* v) {
      fl[0][I] = fr[0][0] = v[0];
      fl[1][I] = fr[1][0] = v[1];
      fl[2][I] = fr[2][0] = v[2];
      return flux_residual(fl, fr, &scale);
    };
    auto norm = [](const std::array<double, 3>& r) {
      return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
    };

    std::array<double, 3> r = resid(x);
    double rn = norm(r);
    rep.history.push_back(rn);
    const double tol = 1e-12 * scale;
    const double dd = st_.c[0] / (st_.denom * grid_.h);  // d(one-sided)/d(value)
    while (rn > tol) {
      if (rep.iterations >= 50)
        throw interface_error("interface solve did not converge in 50 iterations",
                              rep.history);
      double J[3][3] = {
          {(k1 + k2) * dd, k1 - k2, l * (k1 - k2)},
          {0.0, (la1 + la2) * dd, 0.0},
          {-l * (s1 - s2), 0.0, (s1 + s2) * dd}};
      double rhs[3] = {-r[0], -r[1], -r[2]};
      double dx[3];
      detail::solve3(J, rhs, dx);
      double step = 1.0;
      double xt[3];
      for (int halving = 0;; ++halving) {
        for (int i = 0; i < 3; ++i) xt[i] = x[i] + step * dx[i];
        const auto rt = resid(xt);
        const double rtn = norm(rt);
        if (rtn <= rn || halving >= 8) {
          for (int i = 0; i < 3; ++i) x[i] = xt[i];
          r = rt;
          rn = rtn;
          break;
        }
        step *= 0.5;
      }
      rep.history.push_back(rn);
      ++rep.iterations;
      // stalled at the floating-point floor of the flux evaluation
      const double xn = std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2])});
      const double dxn = std::max({std::abs(step * dx[0]), std::abs(step * dx[1]),
                                   std::abs(step * dx[2])});
      if (dxn <= 1e-14 * (1.0 + xn)) {
        if (rn > 1e-8 * scale)
          throw interface_error("interface solve stalled with a large residual",
                                rep.history);
        break;
      }
    }
    // Make sure the accepted iterate is what the arrays hold.
    fl[0][I] = fr[0][0] = x[0];
    fl[1][I] = fr[1][0] = x[1];
    fl[2][I] = fr[2][0] = x[2];
    rep.residual = rn;
    return rep;
  }

  InterfaceReport solve_interface_displacement(BeamState& s) const {
    return solve_trio(s.dl, s.dr);
  }

  /// Six transmission-condition residuals of the displacement field:
  /// three continuity gaps and three flux mismatches.
  std::array<double, 6> interface_residuals(const BeamState& s) const {
    const int I = grid_.i_interface;
    const auto flux = flux_residual(s.dl, s.dr);
    return {std::abs(s.dl[0][I] - s.dr[0][0]), std::abs(s.dl[1][I] - s.dr[1][0]),
            std::abs(s.dl[2][I] - s.dr[2][0]), std::abs(flux[0]),
            std::abs(flux[1]), std::abs(flux[2])};
  }

 private:
  BeamConfig cfg_;
  Grid grid_;
  LoadTables loads_;
  OneSidedStencil st_;
};

/// Free-function form: accelerations for a full state, damping evaluated at
/// the state's own shear rate. Rejects non-finite states.
inline Accel semidiscrete_accel(const BeamState& s, const BeamConfig& cfg,
                                const Grid& grid) {
  for (int f = 0; f < 3; ++f)
    for (const auto* arr : {&s.dl[f], &s.vl[f], &s.dr[f], &s.vr[f]})
      for (double v : *arr)
        if (!std::isfinite(v))
          throw blow_up_error("non-finite field value at t=" + std::to_string(s.t),
                              s.t);
  CoupledSystem sys(cfg, grid);
  Accel out;
  sys.accel(s.dl, s.dr, s.vl[1], out);
  return out;
}

/// Free-function form of the per-step interface solve: updates the field
/// values at the junction in place so the transmission conditions hold.
inline InterfaceReport interface_solve(BeamState& s, const BeamConfig& cfg,
                                       const Grid& grid) {
  CoupledSystem sys(cfg, grid);
  return sys.solve_interface_displacement(s);
}

}  // namespace bresse
