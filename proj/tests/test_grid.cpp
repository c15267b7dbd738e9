#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "zk/grid.hpp"

using namespace zk;

namespace {

Field2D random_smooth(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-1, 1);
  Field2D f(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) {
      double r2 = g.x1(i) * g.x1(i) + g.x2(j) * g.x2(j);
      f.at(i, j) = U(rng) * std::exp(-0.1 * r2);
    }
  // smooth by damping high modes
  Spectrum s = fft(f);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < s.cols(); ++j) {
      double kk = g.k1[i] * g.k1[i] + g.k2[j] * g.k2[j];
      s.at(i, j) *= std::exp(-0.5 * kk) / (g.N1 * g.N2);
    }
  return ifft(s);
}

}  // namespace

TEST_CASE("derivative of a single Fourier mode") {
  Grid g(10.0, 10.0, 64, 64);
  Field2D f(g), ref(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) {
      f.at(i, j) = std::sin(M_PI * g.x1(i) / g.L1);
      ref.at(i, j) = (M_PI / g.L1) * std::cos(M_PI * g.x1(i) / g.L1);
    }
  CHECK(supnorm(derivative(f, 1, 1) - ref) < 1e-10);
}

TEST_CASE("derivative of a constant vanishes") {
  Grid g(5.0, 5.0, 32, 32);
  Field2D f(g);
  for (double& v : f.v) v = 1.0;
  CHECK(supnorm(derivative(f, 1, 1)) < 1e-13);
  CHECK(supnorm(derivative(f, 2, 2)) < 1e-11);
}

TEST_CASE("derivative of a Gaussian matches the analytic formula") {
  Grid g(20.0, 20.0, 256, 256);
  Field2D f(g), ref(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) {
      double r2 = g.x1(i) * g.x1(i) + g.x2(j) * g.x2(j);
      f.at(i, j) = std::exp(-r2);
      ref.at(i, j) = -2.0 * g.x1(i) * std::exp(-r2);
    }
  CHECK(supnorm(derivative(f, 1, 1) - ref) < 1e-10);
}

TEST_CASE("integrate basics") {
  Grid g(20.0, 20.0, 256, 256);
  Field2D f(g);
  CHECK(integrate(f) == 0.0);
  for (double& v : f.v) v = 1.0;
  CHECK(integrate(f) == doctest::Approx(4 * g.L1 * g.L2).epsilon(1e-14));
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j)
      f.at(i, j) = std::exp(-(g.x1(i) * g.x1(i) + g.x2(j) * g.x2(j)));
  CHECK(std::fabs(integrate(f) - M_PI) < 1e-10);
}

TEST_CASE("dealias 2/3 rule") {
  Grid g(8.0, 8.0, 32, 32);
  Spectrum z(g);
  dealias(z);
  for (auto& c : z.c) CHECK(c == std::complex<double>(0, 0));

  // energy only below the cutoff survives untouched
  Spectrum s(g);
  s.at(3, 2) = {1.0, -2.0};
  Spectrum t = s;
  dealias(t);
  CHECK(t.at(3, 2) == s.at(3, 2));

  // Nyquist is zeroed
  Spectrum ny(g);
  ny.at(g.N1 / 2, 0) = {1.0, 0.0};
  dealias(ny);
  CHECK(ny.at(g.N1 / 2, 0) == std::complex<double>(0, 0));
}

TEST_CASE("Parseval identity") {
  Grid g(12.8, 12.8, 128, 128);
  Field2D f = random_smooth(g, 11);
  double a = integrate(multiply(f, f));
  double b = spectral_energy(fft(f));
  CHECK(std::fabs(a - b) < 1e-12 * std::fabs(a));
}

TEST_CASE("mixed partial derivatives commute") {
  Grid g(12.8, 12.8, 128, 128);
  Field2D f = random_smooth(g, 7);
  Field2D a = derivative(derivative(f, 1, 1), 2, 1);
  Field2D b = derivative(derivative(f, 2, 1), 1, 1);
  CHECK(supnorm(a - b) < 1e-12);
}

TEST_CASE("integral of a derivative vanishes") {
  Grid g(12.8, 12.8, 128, 128);
  Field2D f = random_smooth(g, 3);
  CHECK(std::fabs(integrate(derivative(f, 1, 1))) < 1e-12);
  CHECK(std::fabs(integrate(derivative(f, 2, 1))) < 1e-12);
}

TEST_CASE("translate is exact for band-limited fields") {
  Grid g(12.8, 12.8, 128, 128);
  Field2D f = random_smooth(g, 5);
  // shifting by a full grid cell equals index rotation
  Field2D t = translate(f, g.dx1, 0.0);
  double err = 0;
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j)
      err = std::max(err,
                     std::fabs(t.at(i, j) - f.at((i - 1 + g.N1) % g.N1, j)));
  CHECK(err < 1e-11);
  // round trip
  Field2D rt = translate(translate(f, 0.37, -1.21), -0.37, 1.21);
  CHECK(supnorm(rt - f) < 1e-11);
}

TEST_CASE("laplacian matches iterated derivatives") {
  Grid g(12.8, 12.8, 128, 128);
  Field2D f = random_smooth(g, 9);
  Field2D l = derivative(f, 1, 2) + derivative(f, 2, 2);
  CHECK(supnorm(laplacian(f) - l) < 1e-11);
}
