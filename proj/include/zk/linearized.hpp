#pragma once

#include "zk/ground_state.hpp"
#include "zk/grid.hpp"
#include "zk/radial.hpp"

namespace zk {

// L f = -Lap f + f - 3 Q^2 f
Field2D apply_L(const Field2D& f, const Field2D& Q);

// Lowest eigenvalues of the angular-sector-m restriction of L, from a
// dense symmetric tridiagonal discretization of
//   -f'' - f'/r + m^2/r^2 f + f - 3Q(r)^2 f  on (0, rmax].
std::vector<double> radial_eigenvalues(const RadialProfile& p, int count,
                                       int m = 0, double rmax = 16.0,
                                       int n = 3200);

struct EigenPair {
  double lambda = 0;
  Field2D vec;       // unit L2 norm
  double residual = 0;  // ||L v - lambda v||_2
};

// Negative eigenvalue of L on the grid by shifted inverse iteration
// (conjugate gradients on L - shift). The shift should sit below the
// spectrum gap, e.g. near the radial estimate of the lowest eigenvalue.
EigenPair negative_eigenpair(const GroundState& gs, double shift,
                             double tol = 1e-9);

struct CoercivityReport {
  int samples = 0;
  double min_quotient = 0;   // min (Lf,f)/||f||_H1^2 over the probe set
  double mean_quotient = 0;
  bool positive = false;
};

// Monte-Carlo lower-bound probe: random band-limited fields projected
// orthogonal to the given constraint directions, Rayleigh quotients of L.
CoercivityReport coercivity_probe(const GroundState& gs,
                                  const std::vector<Field2D>& constraints,
                                  int samples, unsigned seed);

// chi0: the negative-direction profile used by the modulation
// orthogonality conditions (unit-normalized negative eigenvector).
}  // namespace zk
