#pragma once

#include "zk/ground_state.hpp"
#include "zk/linearized.hpp"
#include "zk/radial.hpp"

// shared, lazily-built fixtures: the radial oracle, the 256^2 ground
// state, and the negative eigenpair
inline const zk::RadialProfile& oracle_profile() {
  static zk::RadialProfile p = zk::solve_radial_Q(1e-10);
  return p;
}

inline const zk::GroundState& gs256() {
  static zk::GroundState gs = zk::solve_Q_2d(
      zk::Grid(25.6, 25.6, 256, 256), oracle_profile(), 1e-10);
  return gs;
}

inline const zk::EigenPair& chi_pair() {
  static zk::EigenPair ep = [] {
    double e0 = zk::radial_eigenvalues(oracle_profile(), 1, 0)[0];
    return zk::negative_eigenpair(gs256(), e0 - 0.5);
  }();
  return ep;
}
