#pragma once

#include "zk/grid.hpp"

namespace zk {

struct BoxTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// S(t) phi: the exact Fourier multiplier e^{i t k1 (k1^2 + k2^2)}
// composed with translation x1 -> x1 + shift (the traveling frame uses
// shift = t)
Field2D apply_S(const Field2D& phi, double t, double shift = 0.0);

// test profile with exact <x>^{-sigma} right tail (to machine precision
// beyond x ~ 10) and an analytic switch-on around x = -4, times a
// Gaussian in y
Field2D decay_profile(const Grid& g, double sigma);

struct WindowFit {
  double slope = 0;      // fitted x-exponent of sup_y |Phi| over the windows
  double predicted = 0;
  bool pass = false;     // slope <= predicted + 0.3 (one-sided)
};

struct LinearDecayReport {
  double sigma = 0, sigma_tilde = 0;
  WindowFit small_t;   // target -sigma + 7/4
  WindowFit large_t;   // target -sigma_tilde
  double t_prefactor_slope = 0;  // fit over t at fixed x; target >= -7/12
  bool t_prefactor_pass = false;
};

LinearDecayReport certify_linear_decay(double sigma, const Grid& g);

struct DuhamelReport {
  double nu = 0, sigma1 = 0, sigma2 = 0, r = 0;
  bool hyp_sigma_min = false;  // sigma_j >= 11/2
  bool hyp_imp4 = false;       // sigma2 >= max(27/7 + 15r/7, 5/4 + 3r)
  bool hyp_imp5 = false;       // sigma1 >= 27(nu+1)/7 and
                               // sigma1 >= (nu/2)sigma2 + 5/8 + (3/2)nu r
  bool hypotheses_ok = false;
  WindowFit small_t;  // target -sigma1/3
  WindowFit large_t;  // target -(sigma2/3 + r)
};

DuhamelReport certify_duhamel(double nu, double sigma1, double sigma2,
                              double r, const Grid& g);

}  // namespace zk
