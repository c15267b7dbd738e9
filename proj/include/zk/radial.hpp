#pragma once

#include <stdexcept>
#include <vector>

namespace zk {

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Radial profile of the ground state Q of  Q'' + Q'/r - Q + Q^3 = 0,
// Q'(0)=0, Q(r) -> 0, sampled uniformly in r.
struct RadialProfile {
  double Q0 = 0;       // Q at the origin
  double dr = 0;
  std::vector<double> r, q, qp;

  double rmax() const { return r.empty() ? 0 : r.back(); }
  double value(double rr) const;   // local cubic interpolation
  double deriv(double rr) const;
  double mass() const;             // int_0^inf Q^2 2 pi r dr
  // sup norm of the FD residual of the radial ODE on [r_lo, r_hi]
  double ode_residual(double r_lo, double r_hi) const;
};

RadialProfile solve_radial_Q(double tol);

}  // namespace zk
