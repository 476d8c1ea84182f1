#pragma once

// Uniform grids with the material interface and every probe forced onto
// nodes exactly (in floating point, not merely within tolerance).

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bresse/errors.hpp"

namespace bresse {

struct Grid {
  double h = 0.0;                  // spacing
  int n = 0;                       // interval count; nodes 0..n
  std::vector<double> nodes;       // positions, nodes[0]=0, nodes[n]=L
  int i_interface = 0;             // nodes[i_interface] == L0 exactly
  std::vector<std::pair<double, int>> probe_indices;  // cross-section -> node

  double L() const { return nodes.back(); }
  double L0() const { return nodes[i_interface]; }
  int left_size() const { return i_interface + 1; }    // nodes 0..I
  int right_size() const { return n - i_interface + 1; }  // nodes I..n

  int probe_node(double x) const {
    for (const auto& [px, idx] : probe_indices)
      if (px == x) return idx;
    throw lookup_error("probe at x=" + std::to_string(x) + " is not registered");
  }
};

/// Builds the coarsest uniform grid with h <= h_target such that L0 and all
/// probes land exactly on nodes. Node positions are computed as (i*L)/n so
/// that exactness is decidable in floating point.
inline Grid build_grid(double L, double L0, double h_target,
                       const std::vector<double>& probes = {}) {
  if (!(L > 0.0) || !(L0 > 0.0) || !(L0 < L))
    throw construction_error("build_grid: require 0 < L0 < L");
  if (!(h_target > 0.0)) throw construction_error("build_grid: h_target must be positive");
  for (double p : probes)
    if (p < 0.0 || p > L)
      throw construction_error("build_grid: probe outside [0,L]");

  const int n_max = 10'000'000;
  const int n0 = std::max(2, (int)std::ceil(L / h_target - 1e-12));

  auto node_of = [&](int i, int n) { return (double(i) * L) / double(n); };
  auto exact_index = [&](double x, int n) -> int {
    const int i = (int)std::llround(x * n / L);
    if (i < 0 || i > n) return -1;
    return node_of(i, n) == x ? i : -1;
  };

  for (int n = n0; n <= n_max; ++n) {
    const int ii = exact_index(L0, n);
    if (ii <= 0 || ii >= n) continue;
    bool ok = true;
    std::vector<std::pair<double, int>> pmap;
    for (double p : probes) {
      const int pi = exact_index(p, n);
      if (pi < 0) {
        ok = false;
        break;
      }
      pmap.emplace_back(p, pi);
    }
    if (!ok) continue;

    Grid g;
    g.n = n;
    g.h = L / n;
    g.nodes.resize(n + 1);
    for (int i = 0; i <= n; ++i) g.nodes[i] = node_of(i, n);
    g.i_interface = ii;
    g.probe_indices = std::move(pmap);
    return g;
  }
  throw construction_error(
      "build_grid: no uniform grid with n <= 1e7 places the interface and all probes on nodes");
}

}  // namespace bresse
