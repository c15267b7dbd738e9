#pragma once

#include "zk/grid.hpp"
#include "zk/radial.hpp"

namespace zk {

struct GridTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ground state Q of -Lap Q + Q - Q^3 = 0 on the grid, with the derived
// static objects used by the modulation and virial machinery:
//   LamQ = Q + y.grad Q, its y1-antiderivative F, and
//   kappa = 1/2 int y2^2 (int Q_{y2} dy1)^2 dy2.
struct GroundState {
  Field2D Q, LamQ, Qy1, Qy2, F;
  double Q0 = 0;        // peak value
  double mass = 0;      // ||Q||_2^2
  double l4 = 0;        // ||Q||_4^4
  double grad2 = 0;     // ||grad Q||_2^2
  double kappa = 0;
  double residual = 0;  // sup norm of -Lap Q + Q - Q^3
  double F_trunc = 0;   // size of the dropped left tail of F
};

GroundState solve_Q_2d(const Grid& grid, const RadialProfile& seed, double tol);

// Rebuild the derived fields and scalars from an already-solved Q
// (e.g. one loaded from disk).
GroundState derive_ground_state(const Field2D& Q);

// F(y1,y2) = int_{-L1}^{y1} LamQ(z,y2) dz, spectral antiderivative
// anchored at the left box edge.
Field2D compute_F(const Field2D& LamQ);

double compute_kappa(const Field2D& Qy2);

// Independent 1D-quadrature route to kappa from the radial profile.
double kappa_radial(const RadialProfile& p);

}  // namespace zk
