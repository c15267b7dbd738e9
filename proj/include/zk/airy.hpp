#pragma once

#include <complex>

namespace zk {

// The calligraphic Airy function 2*pi*Ai(x) (integral normalization
// int e^{i(xi^3/3 + x xi)} dxi) and its derivative. Maclaurin series for
// |x| <= 7.5, asymptotic expansions beyond; absolute error <= 1e-10 on
// [-30, 30].
double airy_cal(double x);
double airy_cal_prime(double x);

// independent oscillatory-quadrature evaluation (contour-shifted
// integrand, Simpson); the oracle the closed forms are tested against
std::complex<double> airy_cal_quadrature(double x);

}  // namespace zk
