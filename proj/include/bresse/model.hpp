#pragma once

// Physical data model for the composite curved-beam simulator: segment
// coefficients, nonlinear feedbacks with potentials, damping laws, loads,
// and the stress resultants (shear force / axial force / bending moment).

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bresse/errors.hpp"

namespace bresse {

using Scalar3Fn = std::function<double(double, double, double)>;
using Scalar1Fn = std::function<double(double)>;

// ---------------------------------------------------------------------------
// Segment coefficients

struct SegmentParams {
  double rho;     // mass density
  double beta;    // rotational inertia
  double k;       // shear stiffness
  double sigma;   // axial stiffness
  double lambda;  // bending stiffness

  void validate(const std::string& where) const {
    auto chk = [&](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw config_error(where + "." + name + " must be strictly positive");
    };
    chk(rho, "rho");
    chk(beta, "beta");
    chk(k, "k");
    chk(sigma, "sigma");
    chk(lambda, "lambda");
  }
};

// ---------------------------------------------------------------------------
// Damping law

struct DampingValidation {
  bool zero_at_origin = false;
  bool monotone = false;
  bool lipschitz_ok = false;  // false for the as-printed saturated variant
  double worst_slope = 0.0;
};

struct DampingSpec {
  Scalar1Fn gamma;
  Scalar1Fn gamma_prime;  // used by the fourth-order limit solver
  double lipschitz_M = 1.0;
  std::string variant = "zero";  // zero | linear | cubic-saturated-as-printed |
                                 // cubic-saturated-C1 | custom

  double operator()(double s) const { return gamma(s); }

  /// Samples gamma on a uniform lattice of `samples` points in [-range,range]
  /// and checks gamma(0)=0, monotonicity and the declared Lipschitz bound.
  DampingValidation validate(int samples = 10000, double range = 100.0) const {
    DampingValidation rep;
    rep.zero_at_origin = gamma(0.0) == 0.0;
    rep.monotone = true;
    rep.lipschitz_ok = true;
    double prev_s = -range;
    double prev_g = gamma(prev_s);
    for (int i = 1; i < samples; ++i) {
      const double s = -range + 2.0 * range * i / (samples - 1);
      const double g = gamma(s);
      if (g < prev_g - 1e-14) rep.monotone = false;
      const double slope = std::abs(g - prev_g) / (s - prev_s);
      rep.worst_slope = std::max(rep.worst_slope, slope);
      if (slope > lipschitz_M * (1.0 + 1e-9)) rep.lipschitz_ok = false;
      prev_s = s;
      prev_g = g;
    }
    return rep;
  }
};

inline DampingSpec make_damping(const std::string& variant) {
  DampingSpec d;
  d.variant = variant;
  if (variant == "zero") {
    d.gamma = [](double) { return 0.0; };
    d.gamma_prime = [](double) { return 0.0; };
    d.lipschitz_M = 0.0;
  } else if (variant == "linear") {
    d.gamma = [](double s) { return s; };
    d.gamma_prime = [](double) { return 1.0; };
    d.lipschitz_M = 1.0;
  } else if (variant == "cubic-saturated-as-printed") {
    // Saturation exactly as printed: jumps from 10 to 100 at |s|=10.
    d.gamma = [](double s) {
      return std::abs(s) <= 10.0 ? s * s * s / 100.0 : 10.0 * s;
    };
    d.gamma_prime = [](double s) {
      return std::abs(s) <= 10.0 ? 3.0 * s * s / 100.0 : 10.0;
    };
    d.lipschitz_M = 10.0;
  } else if (variant == "cubic-saturated-C1") {
    // C^1 saturation: matches value 10 and slope 3 at s = 10.
    d.gamma = [](double s) {
      if (std::abs(s) <= 10.0) return s * s * s / 100.0;
      return s > 0.0 ? 3.0 * s - 20.0 : 3.0 * s + 20.0;
    };
    d.gamma_prime = [](double s) {
      return std::abs(s) <= 10.0 ? 3.0 * s * s / 100.0 : 3.0;
    };
    d.lipschitz_M = 3.0;
  } else {
    throw config_error("unknown damping.variant '" + variant + "'");
  }
  return d;
}

/// Evaluates gamma(s) under the given damping law.
inline double damping_eval(double s, const DampingSpec& spec) {
  return spec.gamma(s);
}

// ---------------------------------------------------------------------------
// Nonlinear feedbacks and their potentials

struct NonlinearitySpec {
  Scalar3Fn F1, F2;                        // potentials
  Scalar3Fn f1, h1, g1, f2, h2, g2;        // feedback triples (grad of F_i)
  bool decoupled = false;                  // f,h depend on (a,b); g on c only
  double delta1 = 0.0, delta2 = 0.0;       // lower bounds: F_i >= -delta_i
  std::string preset = "custom";
  // Partial derivatives of h_i(a,b) used by the fourth-order limit solver;
  // when absent they are formed by central differences.
  Scalar3Fn h1_da, h1_db, h2_da, h2_db;
};

namespace detail {
inline double fd_partial(const Scalar3Fn& F, int arg, double a, double b,
                         double c, double step = 1e-6) {
  std::array<double, 3> p{a, b, c}, m{a, b, c};
  p[arg] += step;
  m[arg] -= step;
  return (F(p[0], p[1], p[2]) - F(m[0], m[1], m[2])) / (2.0 * step);
}
}  // namespace detail

inline NonlinearitySpec make_nonlinearity_zero() {
  NonlinearitySpec s;
  auto zero3 = [](double, double, double) { return 0.0; };
  s.F1 = s.F2 = zero3;
  s.f1 = s.h1 = s.g1 = s.f2 = s.h2 = s.g2 = zero3;
  s.h1_da = s.h1_db = s.h2_da = s.h2_db = zero3;
  s.decoupled = true;
  s.preset = "zero";
  return s;
}

/// Quartic-coupling preset: F(a,b,c) = |a+b|^4 - |a+b|^2 + |ab|^2 + |c|^3 on
/// both segments.
inline NonlinearitySpec make_nonlinearity_sl1() {
  NonlinearitySpec s;
  auto F = [](double a, double b, double c) {
    const double t = a + b;
    return t * t * t * t - t * t + a * a * b * b + std::abs(c) * c * c;
  };
  auto f = [](double a, double b, double) {
    const double t = a + b;
    return 4.0 * t * t * t - 2.0 * t + 2.0 * a * b * b;
  };
  auto h = [](double a, double b, double) {
    const double t = a + b;
    return 4.0 * t * t * t - 2.0 * t + 2.0 * a * a * b;
  };
  auto g = [](double, double, double c) { return 3.0 * std::abs(c) * c; };
  s.F1 = s.F2 = F;
  s.f1 = s.f2 = f;
  s.h1 = s.h2 = h;
  s.g1 = s.g2 = g;
  s.h1_da = s.h2_da = [](double a, double b, double) {
    const double t = a + b;
    return 12.0 * t * t - 2.0 + 4.0 * a * b;  // wrt a, for h(a,b)
  };
  s.h1_db = s.h2_db = [](double a, double b, double) {
    const double t = a + b;
    return 12.0 * t * t - 2.0 + 2.0 * a * a;  // wrt b
  };
  s.decoupled = true;  // f,h read (a,b) only; g reads c only
  s.delta1 = s.delta2 = 0.25;
  s.preset = "sl1";
  return s;
}

/// Double-well preset with decoupled components: F1 = a^4 - a^2 + |c|^3,
/// F2 = a^4 - 4a^2 + 2|c|^3, h = 0.
inline NonlinearitySpec make_nonlinearity_sl2() {
  NonlinearitySpec s;
  auto zero3 = [](double, double, double) { return 0.0; };
  s.F1 = [](double a, double, double c) {
    return a * a * a * a - a * a + std::abs(c) * c * c;
  };
  s.F2 = [](double a, double, double c) {
    return a * a * a * a - 4.0 * a * a + 2.0 * std::abs(c) * c * c;
  };
  s.f1 = [](double a, double, double) { return 4.0 * a * a * a - 2.0 * a; };
  s.f2 = [](double a, double, double) { return 4.0 * a * a * a - 8.0 * a; };
  s.h1 = s.h2 = zero3;
  s.g1 = [](double, double, double c) { return 3.0 * std::abs(c) * c; };
  s.g2 = [](double, double, double c) { return 6.0 * std::abs(c) * c; };
  s.h1_da = s.h1_db = s.h2_da = s.h2_db = zero3;
  s.decoupled = true;
  s.delta1 = 0.25;
  s.delta2 = 4.0;
  s.preset = "sl2";
  return s;
}

/// Custom hook: user supplies the potentials; the feedback triples are the
/// central-difference gradients, which keeps the gradient structure intact.
inline NonlinearitySpec make_nonlinearity_custom(Scalar3Fn F1, Scalar3Fn F2,
                                                 double delta1, double delta2,
                                                 bool decoupled = false) {
  NonlinearitySpec s;
  s.F1 = F1;
  s.F2 = F2;
  s.f1 = [F1](double a, double b, double c) { return detail::fd_partial(F1, 0, a, b, c); };
  s.h1 = [F1](double a, double b, double c) { return detail::fd_partial(F1, 1, a, b, c); };
  s.g1 = [F1](double a, double b, double c) { return detail::fd_partial(F1, 2, a, b, c); };
  s.f2 = [F2](double a, double b, double c) { return detail::fd_partial(F2, 0, a, b, c); };
  s.h2 = [F2](double a, double b, double c) { return detail::fd_partial(F2, 1, a, b, c); };
  s.g2 = [F2](double a, double b, double c) { return detail::fd_partial(F2, 2, a, b, c); };
  s.decoupled = decoupled;
  s.delta1 = delta1;
  s.delta2 = delta2;
  s.preset = "custom";
  return s;
}

/// Returns the feedback triple (f,h,g) of segment `which` (1 or 2) at a point.
inline std::array<double, 3> feedback(std::array<double, 3> point, int which,
                                      const NonlinearitySpec& spec) {
  const auto& [a, b, c] = point;
  if (which == 1) return {spec.f1(a, b, c), spec.h1(a, b, c), spec.g1(a, b, c)};
  if (which == 2) return {spec.f2(a, b, c), spec.h2(a, b, c), spec.g2(a, b, c)};
  throw parameter_error("segment index must be 1 or 2");
}

/// Returns the potential of segment `which` at a point.
inline double potential(std::array<double, 3> point, int which,
                        const NonlinearitySpec& spec) {
  const auto& [a, b, c] = point;
  if (which == 1) return spec.F1(a, b, c);
  if (which == 2) return spec.F2(a, b, c);
  throw parameter_error("segment index must be 1 or 2");
}

// ---------------------------------------------------------------------------
// Loads: six functions of x, time-independent.

struct LoadSpec {
  Scalar1Fn p1, r1, q1;  // left segment
  Scalar1Fn p2, r2, q2;  // right segment
  bool time_dependent = false;  // declared flag; presets are autonomous
  std::string preset = "custom";
};

inline LoadSpec make_loads_zero() {
  LoadSpec l;
  auto z = [](double) { return 0.0; };
  l.p1 = l.r1 = l.q1 = l.p2 = l.r2 = l.q2 = z;
  l.preset = "zero";
  return l;
}

inline LoadSpec make_loads_sl1() {
  LoadSpec l;
  l.p1 = [](double x) { return std::sin(x); };
  l.r1 = [](double x) { return x; };
  l.q1 = [](double x) { return std::sin(x); };
  l.p2 = [](double x) { return std::cos(x); };
  l.r2 = [](double x) { return x + 1.0; };
  l.q2 = [](double x) { return std::cos(x); };
  l.preset = "sl1";
  return l;
}

inline LoadSpec make_loads_sl2() {
  LoadSpec l = make_loads_sl1();
  l.r1 = [](double x) { return x + 4.0; };  // r1(L0) = r2(L0) = 8
  l.r2 = [](double x) { return 2.0 * x; };
  l.preset = "sl2";
  return l;
}

/// Evaluates all six load components at position x in [0,L]:
/// (p1,r1,q1,p2,r2,q2). Only the triple of the segment containing x is
/// physically active; at the interface both are meaningful.
inline std::array<double, 6> load_eval(double x, const LoadSpec& spec,
                                       double L) {
  if (x < 0.0 || x > L) throw domain_error("load position outside [0,L]");
  return {spec.p1(x), spec.r1(x), spec.q1(x),
          spec.p2(x), spec.r2(x), spec.q2(x)};
}

// ---------------------------------------------------------------------------
// Full configuration

struct BeamConfig {
  SegmentParams left, right;
  double l = 0.0;   // curvature
  double L = 1.0;   // total length
  double L0 = 0.5;  // interface position
  DampingSpec damping = make_damping("zero");
  NonlinearitySpec nonlinearity = make_nonlinearity_zero();
  LoadSpec loads = make_loads_zero();

  /// Equal-propagation-speed conditions on the damped segment:
  /// k1 = sigma1 and rho1/k1 = beta1/lambda1, to relative tolerance 1e-12.
  bool equal_speed_flag() const {
    const double a = left.k, b = left.sigma;
    const double c = left.rho / left.k, d = left.beta / left.lambda;
    const bool c1 = std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
    const bool c2 = std::abs(c - d) <= 1e-12 * std::max(std::abs(c), std::abs(d));
    return c1 && c2;
  }

  void validate() const {
    left.validate("segment.left");
    right.validate("segment.right");
    if (!(L > 0.0)) throw config_error("geometry.L must be positive");
    if (!(L0 > 0.0 && L0 < L)) throw config_error("geometry.L0 must satisfy 0 < L0 < L");
    if (!(l >= 0.0)) throw config_error("geometry.l must be nonnegative");
  }
};

/// Coefficients shared by both singular-limit studies:
/// rho = 1, beta = 2 on both segments; sigma = (4,2); lambda = (8,4);
/// k = (4,1); L = 10, interface at 4.
inline BeamConfig preset_coefficients() {
  BeamConfig c;
  c.left = {1.0, 2.0, 4.0, 4.0, 8.0};
  c.right = {1.0, 2.0, 1.0, 2.0, 4.0};
  c.l = 1.0;
  c.L = 10.0;
  c.L0 = 4.0;
  return c;
}

/// First-study preset: saturated cubic damping (C^1 by default), quartic
/// coupled nonlinearity, sinusoidal/linear loads.
inline BeamConfig preset_sl1(const std::string& damping_variant = "cubic-saturated-C1") {
  BeamConfig c = preset_coefficients();
  c.damping = make_damping(damping_variant);
  c.nonlinearity = make_nonlinearity_sl1();
  c.loads = make_loads_sl1();
  return c;
}

/// Second-study preset: linear damping, decoupled double-well nonlinearity,
/// interface-compatible axial loads.
inline BeamConfig preset_sl2() {
  BeamConfig c = preset_coefficients();
  c.damping = make_damping("linear");
  c.nonlinearity = make_nonlinearity_sl2();
  c.loads = make_loads_sl2();
  return c;
}

// ---------------------------------------------------------------------------
// Resultants

/// A slice of one segment's fields (xi, zeta, eta) together with their
/// spatial derivatives, as parallel arrays over nodes.
struct FieldSlice {
  std::span<const double> xi, zeta, eta;
  std::span<const double> xi_x, zeta_x, eta_x;
};

struct Resultants {
  std::vector<double> Q;  // shear force   k (xi_x + zeta + l eta)
  std::vector<double> N;  // axial force   sigma (eta_x - l xi)
  std::vector<double> M;  // bending moment lambda zeta_x
};

inline Resultants resultants(const FieldSlice& s, const SegmentParams& p,
                             double l) {
  const size_t n = s.xi.size();
  if (s.zeta.size() != n || s.eta.size() != n || s.xi_x.size() != n ||
      s.zeta_x.size() != n || s.eta_x.size() != n)
    throw dimension_error("resultants: field and derivative arrays must have equal length");
  Resultants r;
  r.Q.resize(n);
  r.N.resize(n);
  r.M.resize(n);
  for (size_t i = 0; i < n; ++i) {
    r.Q[i] = p.k * (s.xi_x[i] + s.zeta[i] + l * s.eta[i]);
    r.N[i] = p.sigma * (s.eta_x[i] - l * s.xi[i]);
    r.M[i] = p.lambda * s.zeta_x[i];
  }
  return r;
}

// ---------------------------------------------------------------------------
// Initial data presets (functions of x)

struct InitialData {
  // displacement / velocity per field, left then right segment
  std::array<Scalar1Fn, 3> disp_left, vel_left, disp_right, vel_right;
};

inline InitialData initial_zero() {
  InitialData d;
  auto z = [](double) { return 0.0; };
  d.disp_left = {z, z, z};
  d.vel_left = {z, z, z};
  d.disp_right = {z, z, z};
  d.vel_right = {z, z, z};
  return d;
}

/// Quadratic initial data of the first study; satisfies the boundary,
/// continuity and flux conditions exactly for every curvature.
inline InitialData initial_sl1() {
  InitialData d;
  d.disp_left = {
      [](double x) { return -3.0 / 16.0 * x * x + 0.75 * x; },
      [](double x) { return -x * x / 12.0 + 7.0 / 12.0 * x; },
      [](double x) { return x * x / 16.0 - 0.25 * x; }};
  d.disp_right = {
      [](double) { return 0.0; },
      [](double x) { return -x / 6.0 + 5.0 / 3.0; },
      [](double x) { return -x * x / 12.0 + 7.0 / 6.0 * x - 10.0 / 3.0; }};
  auto lv = [](double x) { return 0.25 * x; };
  auto rv = [](double x) { return -(x - 10.0) / 6.0; };
  d.vel_left = {lv, lv, lv};
  d.vel_right = {rv, rv, rv};
  return d;
}

/// Quartic initial data of the second study. The shear angles are the exact
/// negative slopes of the transversal displacements, longitudinal
/// displacements start from zero.
inline InitialData initial_sl2() {
  InitialData d;
  auto phi0 = [](double x) {
    return -13.0 / 640.0 * x * x * x * x + 9.0 / 40.0 * x * x * x -
           23.0 / 40.0 * x * x;
  };
  auto psi0 = [](double x) {
    return -(-13.0 / 160.0 * x * x * x + 27.0 / 40.0 * x * x - 23.0 / 20.0 * x);
  };
  auto u0 = [](double x) {
    return 41.0 / 2160.0 * x * x * x * x - 68.0 / 135.0 * x * x * x +
           823.0 / 180.0 * x * x - 439.0 / 27.0 * x + 520.0 / 27.0;
  };
  auto v0 = [](double x) {
    return -(41.0 / 540.0 * x * x * x - 68.0 / 45.0 * x * x +
             823.0 / 90.0 * x - 439.0 / 27.0);
  };
  auto zero = [](double) { return 0.0; };
  d.disp_left = {phi0, psi0, zero};
  d.disp_right = {u0, v0, zero};
  auto phi1 = [](double x) { return -x * x * x / 32.0 + 3.0 / 16.0 * x * x; };
  auto u1 = [](double x) {
    return x * x * x / 108.0 - 7.0 / 36.0 * x * x + 10.0 / 9.0 * x - 25.0 / 27.0;
  };
  auto sl = [](double x) { return 3.0 / 5.0 * x; };        // psi1 = omega1
  auto sr = [](double x) { return -2.0 / 5.0 * x + 4.0; };  // v1 = w1
  d.vel_left = {phi1, sl, sl};
  d.vel_right = {u1, sr, sr};
  return d;
}

}  // namespace bresse
