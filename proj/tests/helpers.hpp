#pragma once

// Shared test utilities: deterministic RNG, independent finite-difference
// oracles, and sampling minimizers. These stay independent of the library's
// implementation paths they are used to check.

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "bresse/integrate.hpp"

namespace testutil {

/// Lowest standing mode of the discrete composite operator, by power
/// iteration on (1 + tau * accel). Used as genuinely low-frequency initial
/// data for conservation checks.
inline bresse::BeamState lowest_mode_state(const bresse::CoupledSystem& sys,
                                           int iterations = 60000) {
  using namespace bresse;
  const Grid& g = sys.grid();
  const int I = g.i_interface, nr = g.right_size();
  BeamState s = make_zero_state(g);
  const double pi = std::acos(-1.0);
  for (int f = 0; f < 3; ++f) {
    for (int i = 0; i <= I; ++i) s.dl[f][i] = std::sin(pi * g.nodes[i] / g.L());
    for (int j = 0; j < nr; ++j)
      s.dr[f][j] = std::sin(pi * g.nodes[I + j] / g.L());
  }
  apply_dirichlet(s);
  for (int f = 0; f < 3; ++f) s.dr[f][0] = s.dl[f][I];

  const double wmax = 2.0 * max_wave_speed(sys.config()) / g.h;
  const double tau = 1.0 / (wmax * wmax);
  Accel a;
  for (int it = 0; it < iterations; ++it) {
    sys.accel(s.dl, s.dr, s.vl[1], a);
    double nrm = 0.0;
    for (int f = 0; f < 3; ++f) {
      for (int i = 1; i <= I; ++i) {
        s.dl[f][i] += tau * a.al[f][i];
        nrm = std::max(nrm, std::abs(s.dl[f][i]));
      }
      for (int j = 1; j < nr - 1; ++j) {
        s.dr[f][j] += tau * a.ar[f][j];
        nrm = std::max(nrm, std::abs(s.dr[f][j]));
      }
      s.dr[f][0] = s.dl[f][I];
    }
    for (int f = 0; f < 3; ++f) {
      for (auto& v : s.dl[f]) v /= nrm;
      for (auto& v : s.dr[f]) v /= nrm;
    }
  }
  return s;
}

inline std::mt19937_64 rng(unsigned seed = 12345u) { return std::mt19937_64(seed); }

/// Central finite-difference gradient of a scalar function of three
/// variables: the oracle for gradient-consistency checks.
inline std::array<double, 3> fd_gradient(
    const std::function<double(double, double, double)>& F, double a, double b,
    double c, double step = 1e-5) {
  return {(F(a + step, b, c) - F(a - step, b, c)) / (2.0 * step),
          (F(a, b + step, c) - F(a, b - step, c)) / (2.0 * step),
          (F(a, b, c + step) - F(a, b, c - step)) / (2.0 * step)};
}

/// Dense sampling minimum of a scalar function on [lo,hi]^3.
inline double sampled_min_3d(
    const std::function<double(double, double, double)>& F, double lo,
    double hi, int per_axis = 41) {
  double best = F(lo, lo, lo);
  for (int i = 0; i < per_axis; ++i)
    for (int j = 0; j < per_axis; ++j)
      for (int k = 0; k < per_axis; ++k) {
        const double a = lo + (hi - lo) * i / (per_axis - 1);
        const double b = lo + (hi - lo) * j / (per_axis - 1);
        const double c = lo + (hi - lo) * k / (per_axis - 1);
        best = std::min(best, F(a, b, c));
      }
  return best;
}

/// Golden-section minimizer for smooth one-dimensional functions.
inline double golden_min(const std::function<double(double)>& f, double lo,
                         double hi, int iters = 200) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  for (int i = 0; i < iters; ++i) {
    if (f(c) < f(d))
      b = d;
    else
      a = c;
    c = b - phi * (b - a);
    d = a + phi * (b - a);
  }
  return f(0.5 * (a + b));
}

}  // namespace testutil
