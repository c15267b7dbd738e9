#include "zk/airy.hpp"

#include <cmath>

namespace zk {

namespace {

const double AI0 = 0.3550280538878172;    // Ai(0) = 3^{-2/3}/Gamma(2/3)
const double AIP0 = -0.2588194037928068;  // Ai'(0) = -3^{-1/3}/Gamma(1/3)

// Ai and Ai' by the two Maclaurin series f, g (converge everywhere;
// round-off limits use to |x| <~ 7.5)
void airy_series(double x, double& ai, double& aip) {
  double x3 = x * x * x;
  double f = 1, fp = 0, g = x, gp = 1;
  double tf = 1, tg = x;
  for (int k = 0; k < 80; ++k) {
    // f-term: x^{3k} -> x^{3k+3}; the derivative series shares the terms
    double tfn = tf * x3 / ((3 * k + 2) * (3 * k + 3));
    double tgn = tg * x3 / ((3 * k + 3) * (3 * k + 4));
    f += tfn;
    g += tgn;
    if (x != 0) {
      fp += tfn * (3 * k + 3) / x;
      gp += tgn * (3 * k + 4) / x;
    }
    tf = tfn;
    tg = tgn;
    if (std::fabs(tfn) + std::fabs(tgn) < 1e-18 * (std::fabs(f) + 1)) break;
  }
  ai = AI0 * f + AIP0 * g;
  aip = AI0 * fp + AIP0 * gp;
}

// u_k, v_k coefficients of the asymptotic expansions, DLMF 9.7
void uv_coeffs(int n, double* u, double* v) {
  u[0] = v[0] = 1.0;
  for (int k = 0; k + 1 < n; ++k) {
    u[k + 1] = u[k] * (3 * k + 0.5) * (3 * k + 1.5) * (3 * k + 2.5) /
               (54.0 * (k + 1) * (k + 0.5));
    v[k + 1] = u[k + 1] * (6 * (k + 1) + 1) / (1.0 - 6 * (k + 1));
  }
}

void airy_asym(double x, double& ai, double& aip) {
  const int NC = 24;
  double u[NC], v[NC];
  uv_coeffs(NC, u, v);
  double ax = std::fabs(x);
  double zeta = 2.0 / 3.0 * std::pow(ax, 1.5);
  double x14 = std::pow(ax, 0.25);
  if (x > 0) {
    double su = 0, sv = 0, sgn = 1;
    double pu = 1e300;
    for (int k = 0; k < NC; ++k, sgn = -sgn) {
      double tk = u[k] / std::pow(zeta, k);
      if (std::fabs(tk) > pu) break;  // truncate at the smallest term
      pu = std::fabs(tk);
      su += sgn * tk;
      sv += sgn * v[k] / std::pow(zeta, k);
    }
    double e = std::exp(-zeta);
    ai = e * su / (2.0 * std::sqrt(M_PI) * x14);
    aip = -x14 * e * sv / (2.0 * std::sqrt(M_PI));
  } else {
    double se = 0, so = 0, sve = 0, svo = 0, sgn = 1;
    double prev = 1e300;
    for (int k = 0; 2 * k + 1 < NC; ++k, sgn = -sgn) {
      double z2k = std::pow(zeta, 2 * k);
      double mag = u[2 * k] / z2k;
      if (mag < 1e-18 || mag > prev) break;
      prev = mag;
      se += sgn * u[2 * k] / z2k;
      so += sgn * u[2 * k + 1] / (z2k * zeta);
      sve += sgn * v[2 * k] / z2k;
      svo += sgn * v[2 * k + 1] / (z2k * zeta);
    }
    double c = std::cos(zeta - M_PI / 4), s = std::sin(zeta - M_PI / 4);
    ai = (c * se + s * so) / (std::sqrt(M_PI) * x14);
    aip = x14 * (s * sve - c * svo) / std::sqrt(M_PI);
  }
}

void airy_pair(double x, double& ai, double& aip) {
  if (std::fabs(x) <= 7.5)
    airy_series(x, ai, aip);
  else
    airy_asym(x, ai, aip);
}

}  // namespace

double airy_cal(double x) {
  double a, ap;
  airy_pair(x, a, ap);
  return 2.0 * M_PI * a;
}

double airy_cal_prime(double x) {
  double a, ap;
  airy_pair(x, a, ap);
  return 2.0 * M_PI * ap;
}

std::complex<double> airy_cal_quadrature(double x) {
  // shift the contour to Im(xi) = c: the phase i(xi^3/3 + x xi) gains a
  // real part -(c u^2 - c^3/3 + x c) that makes the integrand Gaussian
  using cd = std::complex<double>;
  const double c = 1.0;
  const double U = 14.0;
  const int n = 40000;  // Simpson, even
  const double h = 2.0 * U / n;
  cd acc = 0;
  for (int k = 0; k <= n; ++k) {
    double u = -U + k * h;
    cd xi(u, c);
    cd ph = cd(0, 1) * (xi * xi * xi / 3.0 + x * xi);
    double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * std::exp(ph);
  }
  return acc * (h / 3.0);
}

}  // namespace zk
