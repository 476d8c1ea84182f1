#pragma once

// Discrete state of the six-field composite system. The interface node is
// stored on both segments; the two copies are kept equal by construction.

#include <array>
#include <vector>

#include "bresse/errors.hpp"
#include "bresse/grid.hpp"
#include "bresse/model.hpp"

namespace bresse {

// Field roles within a segment triple.
enum FieldIndex { kTransversal = 0, kShear = 1, kLongitudinal = 2 };

inline const char* field_name(int side, int f) {
  static const char* left_names[3] = {"phi", "psi", "omega"};
  static const char* right_names[3] = {"u", "v", "w"};
  return side == 0 ? left_names[f] : right_names[f];
}

struct BeamState {
  double t = 0.0;
  // dl/vl: left arrays over nodes 0..I; dr/vr: right arrays over nodes I..n
  // (index 0 of a right array is the interface node).
  std::array<std::vector<double>, 3> dl, vl, dr, vr;

  int left_size() const { return (int)dl[0].size(); }
  int right_size() const { return (int)dr[0].size(); }

  double interface_gap() const {
    double g = 0.0;
    for (int f = 0; f < 3; ++f) {
      g = std::max(g, std::abs(dl[f].back() - dr[f].front()));
      g = std::max(g, std::abs(vl[f].back() - vr[f].front()));
    }
    return g;
  }
};

inline BeamState make_state(const Grid& grid, const InitialData& init) {
  BeamState s;
  const int nl = grid.left_size(), nr = grid.right_size();
  for (int f = 0; f < 3; ++f) {
    s.dl[f].resize(nl);
    s.vl[f].resize(nl);
    s.dr[f].resize(nr);
    s.vr[f].resize(nr);
    for (int i = 0; i < nl; ++i) {
      s.dl[f][i] = init.disp_left[f](grid.nodes[i]);
      s.vl[f][i] = init.vel_left[f](grid.nodes[i]);
    }
    for (int j = 0; j < nr; ++j) {
      s.dr[f][j] = init.disp_right[f](grid.nodes[grid.i_interface + j]);
      s.vr[f][j] = init.vel_right[f](grid.nodes[grid.i_interface + j]);
    }
  }
  return s;
}

inline BeamState make_zero_state(const Grid& grid) {
  return make_state(grid, initial_zero());
}

/// Zeroes the clamped values: left fields and velocities at node 0, right
/// fields and velocities at node n.
inline void apply_dirichlet(BeamState& s) {
  for (int f = 0; f < 3; ++f) {
    s.dl[f][0] = 0.0;
    s.vl[f][0] = 0.0;
    s.dr[f].back() = 0.0;
    s.vr[f].back() = 0.0;
  }
}

}  // namespace bresse
