#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace zk {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InsufficientSamples : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fundamental solution A(x,y,t) = int int e^{i(t xi^3 + t xi eta^2 +
// x xi + y eta)} dxi deta and its x-derivative, via the exact Airy
// factorization: rotating the phase to u^3 + v^3 gives
//   A = t^{-2/3} (2 sqrt3)^{-1/3} Acal(w+) Acal(w-),
//   A_x = t^{-1} (2 sqrt3)^{-1} [Acal'(w+)Acal(w-) + Acal(w+)Acal'(w-)],
// with w_pm = t^{-1/3} (x pm sqrt3 y) / 12^{1/3}.
double kernel_A(double x, double y, double t);
double kernel_Ax(double x, double y, double t);

// direct 2D oscillatory integral on a shifted contour; trusted for
// |x|,|y| <= 3 and t in [0.5, 2]
std::complex<double> kernel_A_quadrature(double x, double y, double t);
std::complex<double> kernel_Ax_quadrature(double x, double y, double t);

struct DecayFit {
  double slope = 0;      // log-log slope of the rescaled kernel vs lambda
  double predicted = 0;  // exponent from the decay table
  double tol = 0;
  bool one_sided = false;  // pass when slope <= predicted + tol
  bool pass = false;
  int n = 0;
};

// Sample |A| (or |A_x| with deriv=true) along the ray y = z|x|, sign_x =
// +-1, at t = 1 for lambda = |x|^{3/2} log-spaced in [lam_min, lam_max];
// fit the slope of t^{2/3}|A| (resp. t|A_x|) against lambda.
DecayFit certify_decay(bool deriv, int sign_x, double z, double lam_min,
                       double lam_max, int n, double predicted, double tol,
                       bool one_sided);

}  // namespace zk
