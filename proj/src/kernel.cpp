#include "zk/kernel.hpp"

#include <cmath>
#include <vector>

#include "zk/airy.hpp"

namespace zk {

namespace {

const double C_A = std::pow(2.0 * std::sqrt(3.0), -1.0 / 3.0);
const double C_AX = 1.0 / (2.0 * std::sqrt(3.0));
const double C12 = std::pow(12.0, -1.0 / 3.0);

// glibc cbrt can miss correct rounding by an ulp even at exact cubes;
// one Newton step restores it so the t^{-1/3} scaling is exact there
double cbrt_cr(double t) {
  double c = std::cbrt(t);
  return c - (c * c * c - t) / (3.0 * c * c);
}

void args(double x, double y, double t, double& wp, double& wm) {
  double s = C12 / cbrt_cr(t);
  wp = s * (x + std::sqrt(3.0) * y);
  wm = s * (x - std::sqrt(3.0) * y);
}

}  // namespace

double kernel_A(double x, double y, double t) {
  if (t <= 0) throw DomainError("kernel_A: t must be positive");
  double wp, wm;
  args(x, y, t, wp, wm);
  double c = cbrt_cr(t);
  return C_A / (c * c) * airy_cal(wp) * airy_cal(wm);
}

double kernel_Ax(double x, double y, double t) {
  if (t <= 0) throw DomainError("kernel_Ax: t must be positive");
  double wp, wm;
  args(x, y, t, wp, wm);
  return C_AX / t *
         (airy_cal_prime(wp) * airy_cal(wm) +
          airy_cal(wp) * airy_cal_prime(wm));
}

namespace {

// After the analytic eta integration
//   int e^{i(t xi eta^2 + y eta)} deta = sqrt(pi/(-i t xi)) e^{-i y^2/(4 t xi)},
// shifting xi to the line Im(xi) = c > 0 avoids the xi = 0 singularity and
// gives a Gaussian envelope e^{-3 t c u^2}; then plain Simpson.
std::complex<double> oracle(double x, double y, double t, bool deriv) {
  using cd = std::complex<double>;
  if (t <= 0) throw DomainError("kernel quadrature: t must be positive");
  const double c = 0.75;
  const double U = std::sqrt(45.0 / (3.0 * t * c)) + 2.0;  // e^{-45} floor
  const int n = 60000;
  const double h = 2.0 * U / n;
  const cd I(0, 1);
  cd acc = 0;
  for (int k = 0; k <= n; ++k) {
    double u = -U + k * h;
    cd xi(u, c);
    cd ph = I * (t * xi * xi * xi + x * xi) - I * y * y / (4.0 * t * xi);
    cd g = std::sqrt(M_PI / (-I * t * xi)) * std::exp(ph);
    if (deriv) g *= I * xi;
    double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * g;
  }
  return acc * (h / 3.0);
}

}  // namespace

std::complex<double> kernel_A_quadrature(double x, double y, double t) {
  return oracle(x, y, t, false);
}

std::complex<double> kernel_Ax_quadrature(double x, double y, double t) {
  return oracle(x, y, t, true);
}

DecayFit certify_decay(bool deriv, int sign_x, double z, double lam_min,
                       double lam_max, int n, double predicted, double tol,
                       bool one_sided) {
  if (n < 4) throw InsufficientSamples("certify_decay: need n >= 4");
  DecayFit fit;
  fit.predicted = predicted;
  fit.tol = tol;
  fit.one_sided = one_sided;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int k = 0; k < n; ++k) {
    double lam =
        lam_min * std::pow(lam_max / lam_min, double(k) / (n - 1));
    // envelope over a short lambda window: |A| has Airy zeros along the
    // ray, so the power law lives in the oscillation maxima
    double v = 0;
    for (int j = 0; j < 32; ++j) {
      double lj = lam * (1.0 + 0.30 * j / 32.0);
      double ax = std::pow(lj, 2.0 / 3.0);  // t = 1
      double x = sign_x * ax, y = z * ax;
      double w = deriv ? std::fabs(kernel_Ax(x, y, 1.0))
                       : std::fabs(kernel_A(x, y, 1.0));
      v = std::max(v, w);
    }
    if (v < 1e-280) v = 1e-280;  // super-polynomial branch floor
    double lx = std::log(lam), ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  fit.n = m;
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.pass = one_sided ? (fit.slope <= predicted + tol)
                       : (std::fabs(fit.slope - predicted) <= tol);
  return fit;
}

}  // namespace zk
